#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "airlex/analysis.hpp"
#include "airlex/trajectory.hpp"

namespace airlex {

struct ReportConfig {
    int bins = 8;
    NmiNorm norm = NmiNorm::Geometric;
    std::string log_pi_mode = "novice";  // log-prob source used for reward_disc
    // structural tags dropped from the per-tag analysis (not real words)
    std::set<std::string> exclude_tags = {"eos"};
    std::string config_hash;
    std::uint64_t seed = 0;
};

struct ReportResult {
    TagRanking ranking;
    NmiResult nmi_appearances;
    NmiResult nmi_complexity;
    NmiResult nmi_tag;
    std::vector<std::string> files;  // paths written, relative to out_dir
};

/// Step-3 deliverable: pos_summary.csv, mi_scores.csv, report.md and one
/// SVG bar chart per averaging method, all under out_dir. Deterministic
/// byte-for-byte for fixed inputs. `scored_alt`, when non-empty, adds an
/// alternate-log-prob-source ranking section to the report.
ReportResult build_report(const std::vector<Trajectory>& scored,
                          const std::vector<Trajectory>& scored_alt, const ReportConfig& cfg,
                          const std::string& out_dir);

/// Fixed-format float used in all emitted artifacts.
std::string fmt_double(double v);

}  // namespace airlex
