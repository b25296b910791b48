#pragma once

#include <vector>

#include "airlex/mlp.hpp"
#include "airlex/rng.hpp"
#include "airlex/tensor.hpp"

namespace airlex {

/// Stochastic discrete policy: MLP logits, softmax with temperature.
struct Policy {
    Mlp net;
    double temperature = 1.0;
};

/// log softmax(logits / temperature); NumericError on non-finite logits.
std::vector<double> action_log_probs(const Policy& policy, const Tensor& state);

std::size_t sample_action(const std::vector<double>& log_probs, Rng& rng);

/// Argmax over logits; ties broken by lowest action index.
std::size_t greedy_action(const Policy& policy, const Tensor& state);

/// log pi(a | s) for a single state-action pair.
double log_prob_of(const Policy& policy, const Tensor& state, std::size_t action);

}  // namespace airlex
