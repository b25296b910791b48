#include "airlex/rl.hpp"

#include <cmath>
#include <string>

#include "airlex/errors.hpp"
#include "airlex/optim.hpp"

namespace airlex {

std::uint64_t episode_seed(std::uint64_t root, std::size_t index, std::size_t pool) {
    const std::size_t slot = pool ? index % pool : index;
    return derive_seed(root, 1000 + slot);
}

Rollout rollout_sampled(const Policy& policy, Env& env, std::uint64_t env_seed, Rng& action_rng) {
    Rollout r;
    Tensor state = env.reset(env_seed);
    bool done = false;
    while (!done) {
        std::vector<double> lp = action_log_probs(policy, state);
        std::size_t action = sample_action(lp, action_rng);
        Transition tr = env.step(state, action);
        r.log_probs.push_back(lp[action]);
        r.total_reward += tr.reward;
        done = tr.done;
        state = tr.next_state;
        r.transitions.push_back(std::move(tr));
    }
    return r;
}

Rollout rollout_greedy(const Policy& policy, Env& env, std::uint64_t env_seed) {
    Rollout r;
    Tensor state = env.reset(env_seed);
    bool done = false;
    while (!done) {
        std::size_t action = greedy_action(policy, state);
        Transition tr = env.step(state, action);
        r.total_reward += tr.reward;
        done = tr.done;
        state = tr.next_state;
        r.transitions.push_back(std::move(tr));
    }
    return r;
}

EpisodePair sample_pair(const Policy& policy, Env& env, std::uint64_t env_seed, Rng& action_rng) {
    EpisodePair pair;
    pair.greedy = rollout_greedy(policy, env, env_seed);
    pair.sampled = rollout_sampled(policy, env, env_seed, action_rng);
    return pair;
}

Var self_critical_loss(Graph& g, Policy& policy, const EpisodePair& pair) {
    return self_critical_loss(g, policy, pair,
                              [](const Rollout& r) { return r.total_reward; });
}

Var self_critical_loss(Graph& g, Policy& policy, const EpisodePair& pair,
                       const std::function<double(const Rollout&)>& reward) {
    const double diff = reward(pair.greedy) - reward(pair.sampled);
    Var sum_logp = g.constant(0.0);
    for (const Transition& tr : pair.sampled.transitions) {
        Var logits = policy.net.forward(g, g.constant(tr.state));
        Var lsm = g.log_softmax(g.scale(logits, 1.0 / policy.temperature));
        sum_logp = g.add(sum_logp, g.pick(lsm, tr.action));
    }
    return g.scale(sum_logp, diff);
}

namespace {

/// Mean policy entropy over the sampled steps, on the tape.
Var entropy_bonus(Graph& g, Policy& policy, const std::vector<const Rollout*>& rollouts) {
    Var total = g.constant(0.0);
    std::size_t steps = 0;
    for (const Rollout* r : rollouts) {
        for (const Transition& tr : r->transitions) {
            Var logits = policy.net.forward(g, g.constant(tr.state));
            Var lsm = g.log_softmax(g.scale(logits, 1.0 / policy.temperature));
            // H = -sum p log p
            Var p = g.exp_(lsm);
            total = g.sub(total, g.sum(g.mul(p, lsm)));
            ++steps;
        }
    }
    return g.scale(total, steps ? 1.0 / static_cast<double>(steps) : 0.0);
}

}  // namespace

TrainExpertResult train_expert(Env& env, const RlConfig& cfg,
                               const std::function<void(const IterStat&)>& on_iter) {
    TrainExpertResult result;
    std::vector<std::size_t> dims;
    dims.push_back(env.spec().state_dim);
    for (std::size_t h : cfg.hidden) dims.push_back(h);
    dims.push_back(env.spec().action_count);
    result.policy.net = Mlp::make(dims, derive_seed(cfg.seed, 1));
    result.policy.temperature = cfg.temperature;

    Sgd opt({cfg.learning_rate, cfg.momentum, cfg.seed});
    Rng action_rng = make_rng(derive_seed(cfg.seed, 2));
    std::size_t episode_counter = 0;

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        Graph g;
        Var loss = g.constant(0.0);
        std::vector<EpisodePair> pairs;
        std::vector<const Rollout*> sampled;
        double mean_s = 0.0, mean_g = 0.0;
        for (std::size_t b = 0; b < cfg.batch_episodes; ++b) {
            std::uint64_t es = episode_seed(cfg.seed, episode_counter++, cfg.episode_pool);
            pairs.push_back(sample_pair(result.policy, env, es, action_rng));
            mean_s += pairs.back().sampled.total_reward;
            mean_g += pairs.back().greedy.total_reward;
        }
        for (EpisodePair& pair : pairs) {
            loss = g.add(loss, self_critical_loss(g, result.policy, pair));
            sampled.push_back(&pair.sampled);
        }
        loss = g.scale(loss, 1.0 / static_cast<double>(cfg.batch_episodes));
        if (cfg.entropy_coef != 0.0) {
            loss = g.sub(loss, g.scale(entropy_bonus(g, result.policy, sampled), cfg.entropy_coef));
        }
        const double loss_value = loss->value.item();
        if (!std::isfinite(loss_value)) {
            throw TrainingError("expert training diverged at iteration " + std::to_string(iter) +
                                ": non-finite loss");
        }
        result.policy.net.zero_grad();
        g.backward(loss);
        opt.step(result.policy.net);

        result.curve.push_back({iter, mean_s / cfg.batch_episodes, mean_g / cfg.batch_episodes,
                                loss_value});
        if (on_iter) on_iter(result.curve.back());
    }
    return result;
}

double eval_mean_return(const Policy& policy, Env& env, std::size_t episodes, std::uint64_t seed,
                        std::size_t pool, bool greedy) {
    Rng rng = make_rng(derive_seed(seed, 3));
    double total = 0.0;
    for (std::size_t i = 0; i < episodes; ++i) {
        std::uint64_t es = episode_seed(seed, i, pool);
        Rollout r = greedy ? rollout_greedy(policy, env, es) : rollout_sampled(policy, env, es, rng);
        total += r.total_reward;
    }
    return total / static_cast<double>(episodes);
}

std::vector<Trajectory> collect_trajectories(const Policy& policy, Env& env, std::size_t count,
                                             std::uint64_t seed, std::size_t pool) {
    if (count < 1) throw ContractError("collect_trajectories: count must be >= 1");
    std::vector<Trajectory> out;
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = make_rng(derive_seed(seed, 10000 + i));
        Rollout r = rollout_sampled(policy, env, episode_seed(seed, i, pool), rng);
        Trajectory traj;
        traj.id = "traj-" + std::to_string(i);
        traj.episode_reward = r.total_reward;
        for (const Transition& tr : r.transitions) {
            TrajStep st;
            st.s = tr.state;
            st.a = tr.action;
            st.s_next = tr.next_state;
            st.token_surface = env.action_surface(tr.action);
            st.token_tag = env.action_tag(tr.action);
            traj.steps.push_back(std::move(st));
        }
        out.push_back(std::move(traj));
    }
    return out;
}

}  // namespace airlex
