#pragma once

#include <cstdint>
#include <vector>

#include "airlex/discriminator.hpp"
#include "airlex/env.hpp"
#include "airlex/policy.hpp"
#include "airlex/rl.hpp"
#include "airlex/trajectory.hpp"

namespace airlex {

struct AirlConfig {
    std::size_t iterations = 300;
    std::size_t episodes_per_iter = 8;
    std::size_t disc_updates = 1;    // discriminator updates per iteration
    std::size_t novice_updates = 1;  // novice policy updates per iteration
    double lr_disc = 0.05;
    double lr_novice = 0.05;
    double momentum = 0.0;
    double entropy_coef = 0.01;
    double temperature = 1.0;
    std::vector<std::size_t> hidden_policy = {32};  // same architecture as the expert
    std::vector<std::size_t> hidden_disc = {32};
    double gamma = 0.99;  // must equal the environment's gamma
    std::uint64_t seed = 2;
    std::size_t expert_batch = 64;  // expert transitions per discriminator update
    std::size_t episode_pool = 0;
};

struct AirlIterStat {
    std::size_t iteration = 0;
    double disc_loss = 0.0;
    double disc_accuracy = 0.0;
    double novice_return = 0.0;
};

struct TrainAirlResult {
    Discriminator disc;
    Policy novice;
    std::vector<AirlIterStat> curve;
};

/// Labelled expert/novice transition batch under a log-prob policy.
AirlBatch batch_from_trajectories(const std::vector<Trajectory>& expert,
                                  const std::vector<Trajectory>& novice,
                                  const Policy& log_pi_policy);

/// Step 2: alternating adversarial loop. Per iteration: collect novice
/// rollouts, update the discriminator on expert-vs-novice batches by
/// binary cross-entropy, update the novice by policy gradient on the
/// discriminator's logit reward.
///
/// rollout_override substitutes another policy as the source of the
/// "novice" side (used by the expert-vs-expert control); novice policy
/// updates are skipped in that mode.
TrainAirlResult train_airl(const std::vector<Trajectory>& expert_trajectories, Env& env,
                           const AirlConfig& cfg, const Policy* rollout_override = nullptr,
                           const std::function<void(const AirlIterStat&)>& on_iter = {});

}  // namespace airlex
