#include "airlex/discriminator.hpp"

#include <cmath>

#include "airlex/errors.hpp"
#include "airlex/rng.hpp"

namespace airlex {

Discriminator Discriminator::make(std::size_t state_dim, std::size_t action_count,
                                  const std::vector<std::size_t>& hidden, double gamma,
                                  std::uint64_t seed) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("discriminator: gamma must be in (0,1)");
    Discriminator disc;
    std::vector<std::size_t> g_dims{state_dim + action_count};
    std::vector<std::size_t> h_dims{state_dim};
    for (std::size_t w : hidden) {
        g_dims.push_back(w);
        h_dims.push_back(w);
    }
    g_dims.push_back(1);
    h_dims.push_back(1);
    disc.g = Mlp::make(g_dims, derive_seed(seed, 11));
    disc.h = Mlp::make(h_dims, derive_seed(seed, 12));
    disc.gamma = gamma;
    return disc;
}

Tensor g_input(const Tensor& s, std::size_t action, std::size_t action_count) {
    if (action >= action_count)
        throw DimensionError("g_input: action " + std::to_string(action) + " out of range " +
                             std::to_string(action_count));
    Tensor t = Tensor::zeros({s.size() + action_count});
    for (std::size_t i = 0; i < s.size(); ++i) t.data[i] = s.data[i];
    t.data[s.size() + action] = 1.0;
    return t;
}

double f_value(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next) {
    const double g = disc.g.forward(g_input(s, a, disc.action_count())).item();
    const double h_next = disc.h.forward(s_next).item();
    const double h_cur = disc.h.forward(s).item();
    return g + disc.gamma * h_next - h_cur;
}

Var f_value(Graph& graph, Discriminator& disc, const Tensor& s, std::size_t a,
            const Tensor& s_next) {
    Var g = disc.g.forward(graph, graph.constant(g_input(s, a, disc.action_count())));
    Var h_next = disc.h.forward(graph, graph.constant(s_next));
    Var h_cur = disc.h.forward(graph, graph.constant(s));
    return graph.add(g, graph.sub(graph.scale(h_next, disc.gamma), h_cur));
}

double disc_logit(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next,
                  double log_pi) {
    if (!std::isfinite(log_pi)) throw NumericError("disc_logit: non-finite log pi");
    const double f = f_value(disc, s, a, s_next);
    if (!std::isfinite(f)) throw NumericError("disc_logit: non-finite f value");
    return f - log_pi;
}

double airl_reward(const Discriminator& disc, const Tensor& s, std::size_t a, const Tensor& s_next,
                   double log_pi) {
    return disc_logit(disc, s, a, s_next, log_pi);
}

namespace {

void check_batch(const AirlBatch& batch) {
    if (batch.expert.empty() || batch.novice.empty())
        throw ContractError("disc_loss: batch must contain both expert and novice transitions");
}

double bce_from_logit(double logit, double label) {
    // softplus(logit) - label * logit, stable in both tails
    const double sp = logit > 0.0 ? logit + std::log1p(std::exp(-logit)) : std::log1p(std::exp(logit));
    return sp - label * logit;
}

}  // namespace

double disc_loss(const Discriminator& disc, const AirlBatch& batch) {
    check_batch(batch);
    double total = 0.0;
    for (const AirlSample& s : batch.expert)
        total += bce_from_logit(disc_logit(disc, s.s, s.a, s.s_next, s.log_pi), 1.0);
    for (const AirlSample& s : batch.novice)
        total += bce_from_logit(disc_logit(disc, s.s, s.a, s.s_next, s.log_pi), 0.0);
    return total / static_cast<double>(batch.expert.size() + batch.novice.size());
}

Var disc_loss(Graph& graph, Discriminator& disc, const AirlBatch& batch) {
    check_batch(batch);
    Var total = graph.constant(0.0);
    auto add_sample = [&](const AirlSample& s, double label) {
        Var f = f_value(graph, disc, s.s, s.a, s.s_next);
        Var logit = graph.add(f, graph.constant(-s.log_pi));
        Var term = graph.softplus(logit);
        if (label != 0.0) term = graph.sub(term, graph.scale(logit, label));
        total = graph.add(total, term);
    };
    for (const AirlSample& s : batch.expert) add_sample(s, 1.0);
    for (const AirlSample& s : batch.novice) add_sample(s, 0.0);
    return graph.scale(total, 1.0 / static_cast<double>(batch.expert.size() + batch.novice.size()));
}

double disc_accuracy(const Discriminator& disc, const AirlBatch& batch) {
    check_batch(batch);
    std::size_t correct = 0;
    for (const AirlSample& s : batch.expert)
        if (disc_logit(disc, s.s, s.a, s.s_next, s.log_pi) > 0.0) ++correct;
    for (const AirlSample& s : batch.novice)
        if (disc_logit(disc, s.s, s.a, s.s_next, s.log_pi) <= 0.0) ++correct;
    return static_cast<double>(correct) / static_cast<double>(batch.expert.size() + batch.novice.size());
}

std::vector<double> score_trajectory(const Discriminator& disc, const Trajectory& trajectory,
                                     const std::vector<double>& policy_log_probs) {
    if (policy_log_probs.size() != trajectory.steps.size())
        throw ContractError("score_trajectory: " + std::to_string(policy_log_probs.size()) +
                            " log-probs for " + std::to_string(trajectory.steps.size()) + " steps");
    std::vector<double> rewards;
    rewards.reserve(trajectory.steps.size());
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
        const TrajStep& st = trajectory.steps[i];
        rewards.push_back(airl_reward(disc, st.s, st.a, st.s_next, policy_log_probs[i]));
    }
    return rewards;
}

}  // namespace airlex
