// Independent oracles used by the unit and acceptance suites. These stay
// deliberately naive (finite differences, exhaustive enumeration, direct
// summation) and never share code with the implementation paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "airlex/analysis.hpp"
#include "airlex/graph.hpp"
#include "airlex/gridworld.hpp"
#include "airlex/mlp.hpp"

namespace oracles {

/// Max relative error between the tape's gradients and central finite
/// differences over every parameter of `net`. `make_loss` must build a
/// fresh graph and return the scalar loss node.
inline double max_grad_rel_error(airlex::Mlp& net,
                                 const std::function<airlex::Var(airlex::Graph&)>& make_loss,
                                 double step = 1e-5) {
    net.zero_grad();
    {
        airlex::Graph g;
        airlex::Var loss = make_loss(g);
        g.backward(loss);
    }
    std::vector<double> analytic(net.param_count());
    for (std::size_t i = 0; i < analytic.size(); ++i) analytic[i] = net.get_grad(i);

    auto eval = [&]() {
        airlex::Graph g;
        return make_loss(g)->value.item();
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double w0 = net.get_param(i);
        net.set_param(i, w0 + step);
        const double fp = eval();
        net.set_param(i, w0 - step);
        const double fm = eval();
        net.set_param(i, w0);
        const double fd = (fp - fm) / (2.0 * step);
        const double rel = std::abs(analytic[i] - fd) / std::max({std::abs(fd), std::abs(analytic[i]), 1e-4});
        worst = std::max(worst, rel);
    }
    return worst;
}

/// Optimal undiscounted return of the deterministic gridworld from its
/// start cell, by finite-horizon value iteration over raw cells.
inline double gridworld_optimal_return(const airlex::GridWorldConfig& cfg) {
    const std::size_t W = cfg.width, H = cfg.height;
    auto blocked = [&](std::size_t x, std::size_t y) { return cfg.walls.count({x, y}) > 0; };
    std::vector<double> v(W * H, 0.0);
    for (std::size_t t = 0; t < cfg.max_steps; ++t) {
        std::vector<double> nv(W * H);
        for (std::size_t y = 0; y < H; ++y) {
            for (std::size_t x = 0; x < W; ++x) {
                if (x == cfg.goal.first && y == cfg.goal.second) {
                    nv[y * W + x] = 0.0;  // absorbing
                    continue;
                }
                double best = -1e18;
                const long dx[4] = {0, 0, -1, 1};
                const long dy[4] = {-1, 1, 0, 0};
                for (int a = 0; a < 4; ++a) {
                    long nx = static_cast<long>(x) + dx[a];
                    long ny = static_cast<long>(y) + dy[a];
                    if (nx < 0 || ny < 0 || nx >= static_cast<long>(W) || ny >= static_cast<long>(H) ||
                        blocked(nx, ny)) {
                        nx = x;
                        ny = y;
                    }
                    double q;
                    if (static_cast<std::size_t>(nx) == cfg.goal.first &&
                        static_cast<std::size_t>(ny) == cfg.goal.second) {
                        q = cfg.goal_reward;
                    } else if (t == 0) {
                        q = cfg.step_penalty;  // horizon exhausted after this move
                    } else {
                        q = cfg.step_penalty + v[ny * W + nx];
                    }
                    best = std::max(best, q);
                }
                nv[y * W + x] = best;
            }
        }
        v = std::move(nv);
    }
    return v[cfg.start.second * W + cfg.start.first];
}

/// LCS length by exhaustive subsequence enumeration (candidate length <= ~20).
inline std::size_t lcs_exhaustive(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t best = 0;
    const std::size_t n = a.size();
    for (std::size_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) sub.push_back(a[i]);
        // is sub a subsequence of b?
        std::size_t j = 0;
        for (int x : b) {
            if (j < sub.size() && sub[j] == x) ++j;
        }
        if (j == sub.size()) best = std::max(best, sub.size());
    }
    return best;
}

/// Per-tag averages by explicit double loops over words and
/// trajectories; method1 divides each word's total by its occurrence count.
inline std::map<std::string, double> brute_force_tag_average(const airlex::RewardTable& rewards,
                                                             bool method1) {
    std::set<std::string> tags;
    std::set<std::pair<std::string, std::string>> words;  // (surface, tag)
    std::set<std::string> trajectory_ids;
    for (const airlex::RewardRow& row : rewards) {
        tags.insert(row.tag);
        words.insert({row.surface, row.tag});
        trajectory_ids.insert(row.trajectory_id);
    }
    std::map<std::string, double> out;
    for (const std::string& tag : tags) {
        double n_s = 0.0;
        for (const airlex::RewardRow& row : rewards)
            if (row.tag == tag) n_s += 1.0;
        double acc = 0.0;
        for (const auto& [surface, wtag] : words) {
            if (wtag != tag) continue;
            double n_w = 0.0;
            for (const airlex::RewardRow& row : rewards)
                if (row.surface == surface && row.tag == wtag) n_w += 1.0;
            double word_total = 0.0;
            for (const std::string& tid : trajectory_ids) {
                double r_w_tau = 0.0;
                for (const airlex::RewardRow& row : rewards) {
                    if (row.trajectory_id == tid && row.surface == surface && row.tag == wtag)
                        r_w_tau += row.normalized_reward;
                }
                word_total += r_w_tau;
            }
            acc += method1 ? word_total / n_w : word_total;
        }
        out[tag] = acc / n_s;
    }
    return out;
}

/// Mutual information and marginal entropies (nats) by direct summation
/// over an explicit joint probability table.
struct MiDirect {
    double mi = 0.0;
    double hx = 0.0;
    double hy = 0.0;
};

inline MiDirect mi_from_joint(const std::map<std::pair<int, int>, double>& joint) {
    std::map<int, double> px, py;
    for (const auto& [key, p] : joint) {
        px[key.first] += p;
        py[key.second] += p;
    }
    MiDirect r;
    for (const auto& [k, p] : px) r.hx -= p * std::log(p);
    for (const auto& [k, p] : py) r.hy -= p * std::log(p);
    for (const auto& [key, p] : joint) {
        if (p > 0.0) r.mi += p * std::log(p / (px[key.first] * py[key.second]));
    }
    return r;
}

inline MiDirect mi_from_series(const std::vector<int>& x, const std::vector<int>& y) {
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < x.size(); ++i) joint[{x[i], y[i]}] += 1.0 / x.size();
    return mi_from_joint(joint);
}

}  // namespace oracles
