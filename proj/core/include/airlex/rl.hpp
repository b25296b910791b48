#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "airlex/env.hpp"
#include "airlex/graph.hpp"
#include "airlex/policy.hpp"
#include "airlex/trajectory.hpp"

namespace airlex {

/// One episode: transitions plus the per-step log-probabilities recorded
/// while acting (empty for greedy rollouts).
struct Rollout {
    std::vector<Transition> transitions;
    std::vector<double> log_probs;
    double total_reward = 0.0;  // undiscounted episode reward
};

/// Sampled and greedy rollouts over the same episode (same reset seed).
struct EpisodePair {
    Rollout sampled;
    Rollout greedy;
};

/// Episode seed for the index-th episode under a root seed; a nonzero pool
/// cycles a fixed set of episodes (token env: a fixed article set).
std::uint64_t episode_seed(std::uint64_t root, std::size_t index, std::size_t pool);

Rollout rollout_sampled(const Policy& policy, Env& env, std::uint64_t env_seed, Rng& action_rng);
Rollout rollout_greedy(const Policy& policy, Env& env, std::uint64_t env_seed);
EpisodePair sample_pair(const Policy& policy, Env& env, std::uint64_t env_seed, Rng& action_rng);

/// Self-critical loss on the tape:
///   (R(greedy) - R(sampled)) * sum_t log pi(a_t | s_t)
/// The reward difference enters as a constant factor; gradient flows only
/// through the log-probability terms. Descending this loss raises the
/// sampled sequence's likelihood whenever it out-scores the greedy baseline.
Var self_critical_loss(Graph& g, Policy& policy, const EpisodePair& pair);

/// Variant with an explicit sequence-reward function (defaults to the
/// episode's accumulated env reward in the overload above).
Var self_critical_loss(Graph& g, Policy& policy, const EpisodePair& pair,
                       const std::function<double(const Rollout&)>& reward);

struct RlConfig {
    std::size_t iterations = 2000;
    std::size_t batch_episodes = 8;
    double learning_rate = 0.05;
    double momentum = 0.0;
    double entropy_coef = 0.01;  // 0 disables the bonus
    double temperature = 1.0;
    std::vector<std::size_t> hidden = {32};
    std::uint64_t seed = 1;
    std::size_t episode_pool = 0;
};

struct IterStat {
    std::size_t iteration = 0;
    double mean_sampled_return = 0.0;
    double mean_greedy_return = 0.0;
    double loss = 0.0;
};

struct TrainExpertResult {
    Policy policy;
    std::vector<IterStat> curve;
};

/// Step 1: policy-gradient training with the self-critical loss.
/// TrainingError on divergence (non-finite loss). on_iter, when set, is
/// invoked after every iteration so callers can persist the curve as it
/// grows (it survives a divergence abort that way).
TrainExpertResult train_expert(Env& env, const RlConfig& cfg,
                               const std::function<void(const IterStat&)>& on_iter = {});

double eval_mean_return(const Policy& policy, Env& env, std::size_t episodes, std::uint64_t seed,
                        std::size_t pool, bool greedy);

/// (s, a, s') trajectories with per-step token metadata, sampled from the
/// policy. Per-trajectory seeds derive deterministically from `seed`.
std::vector<Trajectory> collect_trajectories(const Policy& policy, Env& env, std::size_t count,
                                             std::uint64_t seed, std::size_t pool = 0);

}  // namespace airlex
