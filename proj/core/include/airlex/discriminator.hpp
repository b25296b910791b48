#pragma once

#include <vector>

#include "airlex/graph.hpp"
#include "airlex/mlp.hpp"
#include "airlex/tensor.hpp"
#include "airlex/trajectory.hpp"

namespace airlex {

/// AIRL discriminator: f(s, a, s') = g(s, a) + gamma * h(s') - h(s),
/// with Disc(s, a, s') = exp(f) / (exp(f) + pi(a | s)).
/// g takes the state concatenated with a one-hot action; h takes a state.
/// Both output a single scalar. All downstream computation stays in
/// logit space: logit(Disc) = f - log pi(a | s), so exp(f) is never formed.
struct Discriminator {
    Mlp g;
    Mlp h;
    double gamma = 0.99;

    static Discriminator make(std::size_t state_dim, std::size_t action_count,
                              const std::vector<std::size_t>& hidden, double gamma,
                              std::uint64_t seed);

    std::size_t action_count() const { return g.input_dim() - h.input_dim(); }
};

Tensor g_input(const Tensor& s, std::size_t action, std::size_t action_count);

double f_value(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next);
Var f_value(Graph& graph, Discriminator& disc, const Tensor& s, std::size_t a,
            const Tensor& s_next);

/// logit(Disc) = f - log pi(a|s). NumericError on non-finite inputs.
double disc_logit(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next,
                  double log_pi);

/// The novice's per-step reward: log Disc - log(1 - Disc), identical to the
/// logit above. Kept as a named operation because callers mean different
/// things by it.
double airl_reward(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next,
                   double log_pi);

struct AirlSample {
    Tensor s;
    std::size_t a = 0;
    Tensor s_next;
    double log_pi = 0.0;  // log pi(a|s) under the current novice
};

/// Expert transitions are labelled 1, novice transitions 0.
struct AirlBatch {
    std::vector<AirlSample> expert;
    std::vector<AirlSample> novice;
};

/// Mean binary cross-entropy of sigmoid(logit) against the provenance
/// labels, computed from logits. ContractError on a single-class batch.
double disc_loss(const Discriminator& disc, const AirlBatch& batch);
Var disc_loss(Graph& graph, Discriminator& disc, const AirlBatch& batch);

/// Fraction of batch transitions classified correctly at threshold 0.5.
double disc_accuracy(const Discriminator& disc, const AirlBatch& batch);

/// One discriminator reward per transition; ContractError when the
/// log-prob list does not align with the trajectory.
std::vector<double> score_trajectory(const Discriminator& disc, const Trajectory& trajectory,
                                     const std::vector<double>& policy_log_probs);

}  // namespace airlex
