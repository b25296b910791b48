#include "airlex/config.hpp"

#include <fstream>
#include <set>

#include "airlex/errors.hpp"

namespace airlex {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key))
            throw ConfigError("unknown config key: " + path + "." + key);
    }
}

template <typename T>
T get_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("bad value type for config key " + path + "." + key);
    }
}

std::vector<std::size_t> get_dims(const json& obj, const std::string& key, const std::string& path,
                                  std::vector<std::size_t> fallback) {
    return get_or<std::vector<std::size_t>>(obj, key, path, std::move(fallback));
}

}  // namespace

std::unique_ptr<Env> PipelineConfig::make_env() const {
    if (env_kind == "grid") return std::make_unique<GridWorld>(grid);
    TokenEnvConfig cfg = token;
    if (cfg.vocab.empty()) cfg.vocab = load_vocab(vocab_path);
    return std::make_unique<TokenGenEnv>(std::move(cfg));
}

PipelineConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override,
                           std::optional<std::string> out_dir_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed config " + path + ": " + e.what());
    }

    check_keys(j, {"env", "rl", "airl", "analysis", "seed", "out_dir", "trajectory_count",
                   "eval_episodes"},
               "$");

    PipelineConfig cfg;
    cfg.config_path = path;
    cfg.seed = get_or<std::uint64_t>(j, "seed", "$", 1);
    cfg.out_dir = get_or<std::string>(j, "out_dir", "$", "artifacts");
    cfg.trajectory_count = get_or<std::size_t>(j, "trajectory_count", "$", 100);
    cfg.eval_episodes = get_or<std::size_t>(j, "eval_episodes", "$", 50);
    if (cfg.trajectory_count == 0) throw ConfigError("$.trajectory_count must be positive");

    if (!j.contains("env")) throw ConfigError("missing config section: $.env");
    const json& env = j.at("env");
    cfg.env_kind = get_or<std::string>(env, "kind", "$.env", "");
    const double gamma = get_or<double>(env, "gamma", "$.env", 0.99);
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("$.env.gamma must be in (0,1)");
    if (cfg.env_kind == "grid") {
        check_keys(env, {"kind", "gamma", "width", "height", "start", "goal", "walls",
                         "step_penalty", "goal_reward", "max_steps"},
                   "$.env");
        cfg.grid.gamma = gamma;
        cfg.grid.width = get_or<std::size_t>(env, "width", "$.env", 5);
        cfg.grid.height = get_or<std::size_t>(env, "height", "$.env", 5);
        auto start = get_or<std::vector<std::size_t>>(env, "start", "$.env", {0, 0});
        auto goal = get_or<std::vector<std::size_t>>(env, "goal", "$.env",
                                                     {cfg.grid.width - 1, cfg.grid.height - 1});
        if (start.size() != 2 || goal.size() != 2)
            throw ConfigError("$.env.start/goal must be [x, y] pairs");
        cfg.grid.start = {start[0], start[1]};
        cfg.grid.goal = {goal[0], goal[1]};
        for (const auto& w :
             get_or<std::vector<std::vector<std::size_t>>>(env, "walls", "$.env", {})) {
            if (w.size() != 2) throw ConfigError("$.env.walls entries must be [x, y] pairs");
            cfg.grid.walls.insert({w[0], w[1]});
        }
        cfg.grid.step_penalty = get_or<double>(env, "step_penalty", "$.env", -0.04);
        cfg.grid.goal_reward = get_or<double>(env, "goal_reward", "$.env", 1.0);
        cfg.grid.max_steps = get_or<std::size_t>(env, "max_steps", "$.env", 50);
    } else if (cfg.env_kind == "token") {
        check_keys(env, {"kind", "gamma", "vocab_path", "article_len", "max_summary_len",
                         "salient_tags"},
                   "$.env");
        cfg.token.gamma = gamma;
        cfg.vocab_path = get_or<std::string>(env, "vocab_path", "$.env", "");
        if (cfg.vocab_path.empty()) throw ConfigError("missing config key: $.env.vocab_path");
        cfg.token.article_len = get_or<std::size_t>(env, "article_len", "$.env", 10);
        cfg.token.max_summary_len = get_or<std::size_t>(env, "max_summary_len", "$.env", 6);
        auto tags = get_or<std::vector<std::string>>(env, "salient_tags", "$.env", {});
        cfg.token.salient_tags.insert(tags.begin(), tags.end());
    } else {
        throw ConfigError("$.env.kind must be \"grid\" or \"token\", got \"" + cfg.env_kind + "\"");
    }

    const json rl = j.value("rl", json::object());
    check_keys(rl, {"iterations", "batch_episodes", "learning_rate", "momentum", "entropy_coef",
                    "temperature", "collect_temperature", "hidden", "episode_pool"},
               "$.rl");
    cfg.rl.iterations = get_or<std::size_t>(rl, "iterations", "$.rl", 2000);
    cfg.rl.batch_episodes = get_or<std::size_t>(rl, "batch_episodes", "$.rl", 8);
    cfg.rl.learning_rate = get_or<double>(rl, "learning_rate", "$.rl", 0.05);
    cfg.rl.momentum = get_or<double>(rl, "momentum", "$.rl", 0.0);
    cfg.rl.entropy_coef = get_or<double>(rl, "entropy_coef", "$.rl", 0.01);
    cfg.rl.temperature = get_or<double>(rl, "temperature", "$.rl", 1.0);
    cfg.collect_temperature =
        get_or<double>(rl, "collect_temperature", "$.rl", cfg.rl.temperature);
    if (!(cfg.collect_temperature > 0.0))
        throw ConfigError("$.rl.collect_temperature must be > 0");
    cfg.rl.hidden = get_dims(rl, "hidden", "$.rl", {32});
    cfg.rl.episode_pool = get_or<std::size_t>(rl, "episode_pool", "$.rl", 0);
    cfg.rl.seed = derive_seed(cfg.seed, 100);
    if (!(cfg.rl.learning_rate > 0.0)) throw ConfigError("$.rl.learning_rate must be > 0");

    const json airl = j.value("airl", json::object());
    check_keys(airl, {"iterations", "episodes_per_iter", "disc_updates", "novice_updates",
                      "lr_disc", "lr_novice", "momentum", "entropy_coef", "temperature",
                      "hidden_disc", "expert_batch"},
               "$.airl");
    cfg.airl.iterations = get_or<std::size_t>(airl, "iterations", "$.airl", 300);
    cfg.airl.episodes_per_iter = get_or<std::size_t>(airl, "episodes_per_iter", "$.airl", 8);
    cfg.airl.disc_updates = get_or<std::size_t>(airl, "disc_updates", "$.airl", 1);
    cfg.airl.novice_updates = get_or<std::size_t>(airl, "novice_updates", "$.airl", 1);
    cfg.airl.lr_disc = get_or<double>(airl, "lr_disc", "$.airl", 0.05);
    cfg.airl.lr_novice = get_or<double>(airl, "lr_novice", "$.airl", 0.05);
    cfg.airl.momentum = get_or<double>(airl, "momentum", "$.airl", 0.0);
    cfg.airl.entropy_coef = get_or<double>(airl, "entropy_coef", "$.airl", 0.01);
    cfg.airl.temperature = get_or<double>(airl, "temperature", "$.airl", 1.0);
    cfg.airl.hidden_disc = get_dims(airl, "hidden_disc", "$.airl", {32});
    cfg.airl.expert_batch = get_or<std::size_t>(airl, "expert_batch", "$.airl", 64);
    cfg.airl.hidden_policy = cfg.rl.hidden;  // novice mirrors the expert architecture
    cfg.airl.gamma = gamma;
    cfg.airl.episode_pool = cfg.rl.episode_pool;
    cfg.airl.seed = derive_seed(cfg.seed, 200);

    const json analysis = j.value("analysis", json::object());
    check_keys(analysis, {"bins", "nmi_normalization", "log_pi_source", "exclude_tags"},
               "$.analysis");
    cfg.analysis.bins = get_or<int>(analysis, "bins", "$.analysis", 8);
    if (cfg.analysis.bins < 2) throw ConfigError("$.analysis.bins must be >= 2");
    const std::string norm = get_or<std::string>(analysis, "nmi_normalization", "$.analysis",
                                                 "geometric");
    if (norm == "geometric")
        cfg.analysis.norm = NmiNorm::Geometric;
    else if (norm == "arithmetic")
        cfg.analysis.norm = NmiNorm::Arithmetic;
    else
        throw ConfigError("$.analysis.nmi_normalization must be geometric or arithmetic");
    cfg.analysis.log_pi_source = get_or<std::string>(analysis, "log_pi_source", "$.analysis",
                                                     "novice");
    if (cfg.analysis.log_pi_source != "novice" && cfg.analysis.log_pi_source != "expert")
        throw ConfigError("$.analysis.log_pi_source must be novice or expert");
    if (analysis.contains("exclude_tags")) {
        const json& ex = analysis.at("exclude_tags");
        if (!ex.is_array()) throw ConfigError("$.analysis.exclude_tags must be an array of tags");
        cfg.analysis.exclude_tags.clear();
        for (const json& tag : ex) {
            if (!tag.is_string())
                throw ConfigError("$.analysis.exclude_tags must be an array of tags");
            cfg.analysis.exclude_tags.insert(tag.get<std::string>());
        }
    }

    if (seed_override) {
        cfg.seed = *seed_override;
        cfg.rl.seed = derive_seed(cfg.seed, 100);
        cfg.airl.seed = derive_seed(cfg.seed, 200);
    }
    if (out_dir_override) cfg.out_dir = *out_dir_override;

    json effective = j;
    effective["seed"] = cfg.seed;
    effective.erase("out_dir");
    cfg.hash = fnv1a64_hex(effective.dump());
    return cfg;
}

}  // namespace airlex
