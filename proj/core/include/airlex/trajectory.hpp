#pragma once

#include <string>
#include <vector>

#include "airlex/tensor.hpp"

namespace airlex {

struct TrajStep {
    Tensor s;
    std::size_t a = 0;
    Tensor s_next;
    std::string token_surface;  // empty when the env has no token metadata
    std::string token_tag;
    double reward_disc = 0.0;  // discriminator reward, valid when has_reward_disc
    bool has_reward_disc = false;
};

struct Trajectory {
    std::string id;
    std::vector<TrajStep> steps;
    double episode_reward = 0.0;
};

/// Line-delimited JSON, one trajectory per line. Every record carries the
/// config hash of the run that produced it.
void write_trajectories(const std::vector<Trajectory>& trajectories, const std::string& path,
                        const std::string& config_hash);

struct TrajectoryFile {
    std::vector<Trajectory> trajectories;
    std::string config_hash;
};

/// DataError naming the line number on malformed input.
TrajectoryFile read_trajectories(const std::string& path);

}  // namespace airlex
