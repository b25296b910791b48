#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "airlex/airl.hpp"
#include "airlex/analysis.hpp"
#include "airlex/env.hpp"
#include "airlex/gridworld.hpp"
#include "airlex/rl.hpp"
#include "airlex/tokenenv.hpp"

namespace airlex {

struct AnalysisSettings {
    int bins = 8;
    NmiNorm norm = NmiNorm::Geometric;
    std::string log_pi_source = "novice";  // or "expert"
    // structural tags dropped from the per-tag analysis (not real words)
    std::set<std::string> exclude_tags = {"eos"};
};

/// Parsed and validated pipeline configuration. The per-stage seeds all
/// derive from the single root seed, and gamma lives only on the env
/// section so the rl/airl stages cannot disagree on it.
struct PipelineConfig {
    std::string env_kind;  // "grid" or "token"
    GridWorldConfig grid;
    TokenEnvConfig token;
    std::string vocab_path;

    RlConfig rl;
    AirlConfig airl;
    AnalysisSettings analysis;

    std::size_t trajectory_count = 100;
    std::size_t eval_episodes = 50;
    // sampling temperature for trajectory collection; defaults to the
    // expert's training temperature
    double collect_temperature = 1.0;

    std::uint64_t seed = 1;
    std::string out_dir = "artifacts";
    std::string config_path;

    std::string hash;  // over the effective config, out_dir excluded

    std::unique_ptr<Env> make_env() const;
};

/// ConfigError naming the offending field on unknown keys, bad types or
/// violated invariants.
PipelineConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = {},
                           std::optional<std::string> out_dir_override = {});

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace airlex
