#pragma once

#include <set>
#include <utility>
#include <vector>

#include "airlex/env.hpp"

namespace airlex {

struct GridWorldConfig {
    std::size_t width = 5;
    std::size_t height = 5;
    std::pair<std::size_t, std::size_t> start{0, 0};  // (x, y)
    std::pair<std::size_t, std::size_t> goal{4, 4};
    std::set<std::pair<std::size_t, std::size_t>> walls;
    double step_penalty = -0.04;
    double goal_reward = 1.0;
    std::size_t max_steps = 50;
    double gamma = 0.99;
};

/// Deterministic navigation gridworld. State features are a one-hot over
/// cells. Actions: 0 up (y-1), 1 down, 2 left, 3 right. Moves into walls
/// or off the grid leave the agent in place and still cost step_penalty.
class GridWorld final : public Env {
  public:
    explicit GridWorld(GridWorldConfig cfg);

    const MdpSpec& spec() const override { return spec_; }
    Tensor reset(std::uint64_t seed) override;
    Transition step(const Tensor& state, std::size_t action) override;
    std::unique_ptr<Env> clone() const override;

    std::string action_surface(std::size_t action) const override;
    std::string action_tag(std::size_t) const override { return "move"; }

    const GridWorldConfig& config() const { return cfg_; }

    Tensor encode(std::size_t x, std::size_t y) const;
    std::pair<std::size_t, std::size_t> decode(const Tensor& state) const;

  private:
    GridWorldConfig cfg_;
    MdpSpec spec_;
    std::size_t steps_ = 0;
    bool done_ = true;
};

}  // namespace airlex
