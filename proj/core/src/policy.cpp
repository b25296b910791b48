#include "airlex/policy.hpp"

#include <algorithm>
#include <cmath>

#include "airlex/errors.hpp"

namespace airlex {

std::vector<double> action_log_probs(const Policy& policy, const Tensor& state) {
    Tensor logits = policy.net.forward(state);
    if (!all_finite(logits.data)) throw NumericError("policy produced non-finite logits");
    std::vector<double> lp = logits.data;
    for (double& v : lp) v /= policy.temperature;
    const double mx = *std::max_element(lp.begin(), lp.end());
    double z = 0.0;
    for (double v : lp) z += std::exp(v - mx);
    const double log_z = mx + std::log(z);
    for (double& v : lp) v -= log_z;
    return lp;
}

std::size_t sample_action(const std::vector<double>& log_probs, Rng& rng) {
    const double u = uniform(rng, 0.0, 1.0);
    double cum = 0.0;
    for (std::size_t a = 0; a < log_probs.size(); ++a) {
        cum += std::exp(log_probs[a]);
        if (u < cum) return a;
    }
    return log_probs.size() - 1;  // guard against rounding at the tail
}

std::size_t greedy_action(const Policy& policy, const Tensor& state) {
    Tensor logits = policy.net.forward(state);
    if (!all_finite(logits.data)) throw NumericError("policy produced non-finite logits");
    std::size_t best = 0;
    for (std::size_t a = 1; a < logits.size(); ++a) {
        if (logits.data[a] > logits.data[best]) best = a;
    }
    return best;
}

double log_prob_of(const Policy& policy, const Tensor& state, std::size_t action) {
    return action_log_probs(policy, state).at(action);
}

}  // namespace airlex
