#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "airlex/trajectory.hpp"

namespace airlex {

/// One token occurrence with its raw and per-trajectory-softmax reward.
struct RewardRow {
    std::string trajectory_id;
    std::size_t step_index = 0;
    std::string surface;
    std::string tag;
    double raw_reward = 0.0;
    double normalized_reward = 0.0;
};
using RewardTable = std::vector<RewardRow>;

/// Words are (surface, tag) pairs; the same surface under two tags is two words.
struct WordKey {
    std::string surface;
    std::string tag;
    auto operator<=>(const WordKey&) const = default;
};

struct WordStat {
    std::size_t count = 0;       // occurrences over all trajectories
    std::size_t complexity = 0;  // character count of the surface
};
using FeatureTable = std::map<WordKey, WordStat>;

/// Softmax over one trajectory's raw rewards (max-subtracted).
/// DataError naming trajectory_id on non-finite input.
std::vector<double> normalize_rewards(const std::vector<double>& raw,
                                      const std::string& trajectory_id = "");

struct Tables {
    RewardTable rewards;
    FeatureTable features;
};

/// PipelineError when a trajectory lacks discriminator rewards or token metadata.
/// Steps whose tag is in exclude_tags (structural tokens such as an
/// end-of-sequence marker) are dropped before per-trajectory normalization;
/// trajectories left empty by the filter are skipped.
Tables build_tables(const std::vector<Trajectory>& scored,
                    const std::set<std::string>& exclude_tags = {});

/// Per-tag average, method 1: group rewards by word, divide each word's
/// total by its occurrence count, then divide the tag total by n_s.
std::map<std::string, double> avg_method1(const RewardTable& rewards, const FeatureTable& features);

/// Per-tag average, method 2: no per-word normalization, tag total / n_s.
std::map<std::string, double> avg_method2(const RewardTable& rewards, const FeatureTable& features);

struct TagSummary {
    std::string tag;
    std::size_t n_s = 0;
    double avg_method1 = 0.0;
    double avg_method2 = 0.0;
    std::size_t rank_method1 = 0;  // 1 = most rewarding
    std::size_t rank_method2 = 0;
};

struct TagRanking {
    std::vector<TagSummary> rows;  // sorted by rank_method1
    double spearman = 1.0;         // agreement between the two rankings
};

/// Descending by average; ties broken lexicographically by tag name.
TagRanking rank_tags(const RewardTable& rewards, const FeatureTable& features);

enum class NmiNorm { Geometric, Arithmetic };

struct NmiResult {
    double value = 0.0;
    bool warning = false;  // a marginal had zero entropy; dependence undefined
};

/// Plug-in normalized mutual information of two aligned discrete series.
NmiResult normalized_mi_discrete(const std::vector<int>& x, const std::vector<int>& y,
                                 NmiNorm norm = NmiNorm::Geometric);

/// Equal-frequency (quantile) discretization into `bins` bins. Series with
/// cardinality <= bins are kept as-is.
std::vector<int> discretize(const std::vector<double>& values, int bins);

/// NMI between a discrete characteristic and real-valued rewards; the
/// rewards are equal-frequency binned.
NmiResult normalized_mi(const std::vector<int>& x, const std::vector<double>& rewards, int bins,
                        NmiNorm norm = NmiNorm::Geometric);

/// Three word characteristics, one aligned series per
/// occurrence row: appearance count, complexity, tag (categorical ids).
struct CharacteristicSeries {
    std::vector<int> appearances;
    std::vector<int> complexity;
    std::vector<int> tag_ids;
    std::vector<double> rewards;
};
CharacteristicSeries characteristic_series(const RewardTable& rewards, const FeatureTable& features);

}  // namespace airlex
