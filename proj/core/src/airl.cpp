#include "airlex/airl.hpp"

#include <cmath>
#include <string>

#include "airlex/errors.hpp"
#include "airlex/optim.hpp"

namespace airlex {

AirlBatch batch_from_trajectories(const std::vector<Trajectory>& expert,
                                  const std::vector<Trajectory>& novice,
                                  const Policy& log_pi_policy) {
    AirlBatch batch;
    auto fill = [&](const std::vector<Trajectory>& src, std::vector<AirlSample>& dst) {
        for (const Trajectory& traj : src) {
            for (const TrajStep& st : traj.steps) {
                AirlSample s;
                s.s = st.s;
                s.a = st.a;
                s.s_next = st.s_next;
                s.log_pi = log_prob_of(log_pi_policy, st.s, st.a);
                dst.push_back(std::move(s));
            }
        }
    };
    fill(expert, batch.expert);
    fill(novice, batch.novice);
    return batch;
}

namespace {

std::vector<AirlSample> flatten_expert(const std::vector<Trajectory>& trajectories) {
    std::vector<AirlSample> out;
    for (const Trajectory& traj : trajectories) {
        for (const TrajStep& st : traj.steps) {
            AirlSample s;
            s.s = st.s;
            s.a = st.a;
            s.s_next = st.s_next;
            out.push_back(std::move(s));
        }
    }
    return out;
}

/// Policy-gradient update from discriminator rewards: discounted
/// return-to-go per step, batch-standardised advantages.
void novice_update(Policy& novice, const std::vector<Rollout>& rollouts, const Discriminator& disc,
                   double gamma, double entropy_coef, Sgd& opt) {
    struct Step {
        const Transition* tr;
        double ret = 0.0;
    };
    std::vector<Step> steps;
    for (const Rollout& r : rollouts) {
        std::vector<double> rewards;
        for (std::size_t t = 0; t < r.transitions.size(); ++t) {
            const Transition& tr = r.transitions[t];
            rewards.push_back(airl_reward(disc, tr.state, tr.action, tr.next_state, r.log_probs[t]));
        }
        double g_ret = 0.0;
        std::vector<double> rets(rewards.size());
        for (std::size_t t = rewards.size(); t-- > 0;) {
            g_ret = rewards[t] + gamma * g_ret;
            rets[t] = g_ret;
        }
        for (std::size_t t = 0; t < rewards.size(); ++t) steps.push_back({&r.transitions[t], rets[t]});
    }
    if (steps.empty()) return;
    double mean = 0.0;
    for (const Step& s : steps) mean += s.ret;
    mean /= steps.size();
    double var = 0.0;
    for (const Step& s : steps) var += (s.ret - mean) * (s.ret - mean);
    const double sd = std::sqrt(var / steps.size()) + 1e-8;

    Graph g;
    Var loss = g.constant(0.0);
    for (const Step& s : steps) {
        Var logits = novice.net.forward(g, g.constant(s.tr->state));
        Var lsm = g.log_softmax(g.scale(logits, 1.0 / novice.temperature));
        Var logp = g.pick(lsm, s.tr->action);
        loss = g.sub(loss, g.scale(logp, (s.ret - mean) / sd));
        if (entropy_coef != 0.0) {
            Var p = g.exp_(lsm);
            loss = g.add(loss, g.scale(g.sum(g.mul(p, lsm)), entropy_coef));
        }
    }
    loss = g.scale(loss, 1.0 / static_cast<double>(steps.size()));
    if (!std::isfinite(loss->value.item())) throw TrainingError("novice update: non-finite loss");
    novice.net.zero_grad();
    g.backward(loss);
    opt.step(novice.net);
}

}  // namespace

TrainAirlResult train_airl(const std::vector<Trajectory>& expert_trajectories, Env& env,
                           const AirlConfig& cfg, const Policy* rollout_override,
                           const std::function<void(const AirlIterStat&)>& on_iter) {
    if (expert_trajectories.empty())
        throw ContractError("train_airl: expert trajectory set is empty");
    if (std::abs(cfg.gamma - env.spec().gamma) > 1e-12)
        throw ConfigError("train_airl: gamma differs from the environment's gamma");

    TrainAirlResult result;
    std::vector<std::size_t> dims{env.spec().state_dim};
    for (std::size_t h : cfg.hidden_policy) dims.push_back(h);
    dims.push_back(env.spec().action_count);
    result.novice.net = Mlp::make(dims, derive_seed(cfg.seed, 21));
    result.novice.temperature = cfg.temperature;
    result.disc = Discriminator::make(env.spec().state_dim, env.spec().action_count,
                                      cfg.hidden_disc, cfg.gamma, derive_seed(cfg.seed, 22));

    std::vector<AirlSample> expert_pool = flatten_expert(expert_trajectories);
    Sgd opt_disc_g({cfg.lr_disc, cfg.momentum, cfg.seed});
    Sgd opt_disc_h({cfg.lr_disc, cfg.momentum, cfg.seed});
    Sgd opt_novice({cfg.lr_novice, cfg.momentum, cfg.seed});
    Rng rng = make_rng(derive_seed(cfg.seed, 23));
    std::size_t episode_counter = 0;

    for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
        const Policy& actor = rollout_override ? *rollout_override : result.novice;
        std::vector<Rollout> rollouts;
        double mean_return = 0.0;
        for (std::size_t e = 0; e < cfg.episodes_per_iter; ++e) {
            std::uint64_t es = episode_seed(cfg.seed, episode_counter++, cfg.episode_pool);
            rollouts.push_back(rollout_sampled(actor, env, es, rng));
            mean_return += rollouts.back().total_reward;
        }
        mean_return /= cfg.episodes_per_iter;

        AirlBatch batch;
        for (const Rollout& r : rollouts) {
            for (std::size_t t = 0; t < r.transitions.size(); ++t) {
                const Transition& tr = r.transitions[t];
                AirlSample s;
                s.s = tr.state;
                s.a = tr.action;
                s.s_next = tr.next_state;
                s.log_pi = log_prob_of(result.novice, tr.state, tr.action);
                batch.novice.push_back(std::move(s));
            }
        }
        for (std::size_t i = 0; i < cfg.expert_batch; ++i) {
            AirlSample s = expert_pool[uniform_index(rng, expert_pool.size())];
            s.log_pi = log_prob_of(result.novice, s.s, s.a);
            batch.expert.push_back(std::move(s));
        }

        double loss_value = 0.0;
        for (std::size_t u = 0; u < cfg.disc_updates; ++u) {
            Graph g;
            Var loss = disc_loss(g, result.disc, batch);
            loss_value = loss->value.item();
            if (!std::isfinite(loss_value)) {
                throw TrainingError("airl training diverged at iteration " + std::to_string(iter) +
                                    ": non-finite discriminator loss");
            }
            result.disc.g.zero_grad();
            result.disc.h.zero_grad();
            g.backward(loss);
            opt_disc_g.step(result.disc.g);
            opt_disc_h.step(result.disc.h);
        }

        if (!rollout_override) {
            for (std::size_t u = 0; u < cfg.novice_updates; ++u) {
                novice_update(result.novice, rollouts, result.disc, cfg.gamma, cfg.entropy_coef,
                              opt_novice);
            }
        }

        result.curve.push_back({iter, loss_value, disc_accuracy(result.disc, batch), mean_return});
        if (on_iter) on_iter(result.curve.back());
    }
    return result;
}

}  // namespace airlex
