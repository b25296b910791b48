#include "airlex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "airlex/errors.hpp"

namespace airlex {

std::vector<double> normalize_rewards(const std::vector<double>& raw,
                                      const std::string& trajectory_id) {
    if (raw.empty()) throw ContractError("normalize_rewards: empty reward list");
    for (double r : raw) {
        if (!std::isfinite(r))
            throw DataError("normalize_rewards: non-finite reward in trajectory " + trajectory_id);
    }
    const double mx = *std::max_element(raw.begin(), raw.end());
    std::vector<double> out(raw.size());
    double z = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = std::exp(raw[i] - mx);
        z += out[i];
    }
    for (double& v : out) v /= z;
    return out;
}

Tables build_tables(const std::vector<Trajectory>& scored,
                    const std::set<std::string>& exclude_tags) {
    if (scored.empty()) throw PipelineError("analysis: scored trajectory set is empty");
    Tables t;
    for (const Trajectory& traj : scored) {
        std::vector<double> raw;
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < traj.steps.size(); ++i) {
            const TrajStep& st = traj.steps[i];
            if (!st.has_reward_disc)
                throw PipelineError("analysis: trajectory " + traj.id +
                                    " lacks discriminator rewards; run the airl stage first");
            if (st.token_surface.empty())
                throw PipelineError("analysis: trajectory " + traj.id + " lacks token metadata");
            if (exclude_tags.count(st.token_tag)) continue;
            raw.push_back(st.reward_disc);
            kept.push_back(i);
        }
        if (raw.empty()) continue;  // trajectory held only excluded tokens
        std::vector<double> norm = normalize_rewards(raw, traj.id);
        for (std::size_t k = 0; k < kept.size(); ++k) {
            const TrajStep& st = traj.steps[kept[k]];
            t.rewards.push_back({traj.id, kept[k], st.token_surface, st.token_tag, raw[k], norm[k]});
            WordStat& ws = t.features[{st.token_surface, st.token_tag}];
            ws.count += 1;
            ws.complexity = st.token_surface.size();
        }
    }
    return t;
}

namespace {

struct WordAgg {
    double total_reward = 0.0;
    std::size_t count = 0;
};

std::map<WordKey, WordAgg> aggregate_words(const RewardTable& rewards,
                                           const FeatureTable& features) {
    std::map<WordKey, WordAgg> agg;
    for (const RewardRow& row : rewards) {
        WordKey key{row.surface, row.tag};
        if (!features.count(key))
            throw DataError("analysis: token " + row.surface + "/" + row.tag +
                            " missing from the feature table");
        WordAgg& a = agg[key];
        a.total_reward += row.normalized_reward;
        a.count += 1;
    }
    return agg;
}

std::map<std::string, std::size_t> tag_counts(const RewardTable& rewards) {
    std::map<std::string, std::size_t> n_s;
    for (const RewardRow& row : rewards) n_s[row.tag] += 1;
    return n_s;
}

}  // namespace

std::map<std::string, double> avg_method1(const RewardTable& rewards,
                                          const FeatureTable& features) {
    auto agg = aggregate_words(rewards, features);
    auto n_s = tag_counts(rewards);
    std::map<std::string, double> out;
    for (const auto& [key, a] : agg)
        out[key.tag] += a.total_reward / static_cast<double>(a.count);
    for (auto& [tag, v] : out) v /= static_cast<double>(n_s.at(tag));
    return out;
}

std::map<std::string, double> avg_method2(const RewardTable& rewards,
                                          const FeatureTable& features) {
    auto agg = aggregate_words(rewards, features);
    auto n_s = tag_counts(rewards);
    std::map<std::string, double> out;
    for (const auto& [key, a] : agg) out[key.tag] += a.total_reward;
    for (auto& [tag, v] : out) v /= static_cast<double>(n_s.at(tag));
    return out;
}

namespace {

/// 1-based ranks, descending by value, ties lexicographic by tag.
std::map<std::string, std::size_t> rank_of(const std::map<std::string, double>& averages) {
    std::vector<std::pair<std::string, double>> order(averages.begin(), averages.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::map<std::string, std::size_t> ranks;
    for (std::size_t i = 0; i < order.size(); ++i) ranks[order[i].first] = i + 1;
    return ranks;
}

}  // namespace

TagRanking rank_tags(const RewardTable& rewards, const FeatureTable& features) {
    auto m1 = avg_method1(rewards, features);
    auto m2 = avg_method2(rewards, features);
    auto n_s = tag_counts(rewards);
    auto r1 = rank_of(m1);
    auto r2 = rank_of(m2);

    TagRanking result;
    for (const auto& [tag, avg1] : m1) {
        result.rows.push_back({tag, n_s.at(tag), avg1, m2.at(tag), r1.at(tag), r2.at(tag)});
    }
    std::sort(result.rows.begin(), result.rows.end(),
              [](const TagSummary& a, const TagSummary& b) { return a.rank_method1 < b.rank_method1; });

    const std::size_t n = result.rows.size();
    if (n >= 2) {
        double d2 = 0.0;
        for (const TagSummary& row : result.rows) {
            const double d = static_cast<double>(row.rank_method1) - static_cast<double>(row.rank_method2);
            d2 += d * d;
        }
        result.spearman = 1.0 - 6.0 * d2 / (static_cast<double>(n) * (n * n - 1.0));
    }
    return result;
}

NmiResult normalized_mi_discrete(const std::vector<int>& x, const std::vector<int>& y,
                                 NmiNorm norm) {
    if (x.empty() || x.size() != y.size())
        throw ContractError("normalized_mi: series must be non-empty and aligned");
    const double n = static_cast<double>(x.size());
    std::map<int, double> px, py;
    std::map<std::pair<int, int>, double> pxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        px[x[i]] += 1.0 / n;
        py[y[i]] += 1.0 / n;
        pxy[{x[i], y[i]}] += 1.0 / n;
    }
    auto entropy = [](const std::map<int, double>& p) {
        double h = 0.0;
        for (const auto& [k, v] : p) h -= v * std::log(v);
        return h;
    };
    const double hx = entropy(px), hy = entropy(py);
    if (hx <= 0.0 || hy <= 0.0) return {0.0, true};
    double mi = 0.0;
    for (const auto& [key, p] : pxy) mi += p * std::log(p / (px.at(key.first) * py.at(key.second)));
    const double denom = norm == NmiNorm::Geometric ? std::sqrt(hx * hy) : 0.5 * (hx + hy);
    return {mi / denom, false};
}

std::vector<int> discretize(const std::vector<double>& values, int bins) {
    if (bins < 2) throw ContractError("discretize: bins must be >= 2");
    std::set<double> distinct(values.begin(), values.end());
    if (distinct.size() <= static_cast<std::size_t>(bins)) {
        // small cardinality: each distinct value is its own category
        std::vector<int> out;
        out.reserve(values.size());
        for (double v : values)
            out.push_back(static_cast<int>(std::distance(distinct.begin(), distinct.find(v))));
        return out;
    }
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    std::vector<int> out(values.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        out[idx[pos]] = static_cast<int>(pos * static_cast<std::size_t>(bins) / idx.size());
    }
    return out;
}

NmiResult normalized_mi(const std::vector<int>& x, const std::vector<double>& rewards, int bins,
                        NmiNorm norm) {
    std::vector<double> xd(x.begin(), x.end());
    std::vector<int> xb = discretize(xd, bins);
    std::vector<int> yb = discretize(rewards, bins);
    return normalized_mi_discrete(xb, yb, norm);
}

CharacteristicSeries characteristic_series(const RewardTable& rewards,
                                           const FeatureTable& features) {
    CharacteristicSeries s;
    std::map<std::string, int> tag_ids;
    for (const RewardRow& row : rewards) {
        auto it = features.find({row.surface, row.tag});
        if (it == features.end())
            throw DataError("analysis: token " + row.surface + "/" + row.tag +
                            " missing from the feature table");
        s.appearances.push_back(static_cast<int>(it->second.count));
        s.complexity.push_back(static_cast<int>(it->second.complexity));
        auto [tit, inserted] = tag_ids.try_emplace(row.tag, static_cast<int>(tag_ids.size()));
        s.tag_ids.push_back(tit->second);
        s.rewards.push_back(row.normalized_reward);
    }
    return s;
}

}  // namespace airlex
