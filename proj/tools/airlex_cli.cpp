// airlex: train an expert by RL, recover its reward function with AIRL,
// and summarize the expert's decision tendencies from the discriminator's
// rewards. Stages: train-expert -> train-airl -> analyze (or run-all).
//
// Exit codes: 0 success, 2 usage/config error, 3 pipeline-order error,
// 4 numeric/training/data failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "airlex/errors.hpp"
#include "airlex/pipeline.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitPipeline = 3;
constexpr int kExitFailure = 4;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    bool force = false;
    bool dry_run = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "path to the pipeline config file")->required();
    cmd->add_option("--seed", [&opts](const std::vector<std::string>& v) {
        opts.seed = std::stoull(v.at(0));
        return true;
    }, "override the root seed");
    cmd->add_option("--out", [&opts](const std::vector<std::string>& v) {
        opts.out_dir = v.at(0);
        return true;
    }, "override the artifact directory");
    cmd->add_flag("--force", opts.force, "ignore stage-order and config-hash checks");
    cmd->add_flag("--dry-run", opts.dry_run, "validate config and print the stage plan only");
}

int dispatch(const std::string& command, const CommonOpts& opts) {
    airlex::PipelineConfig cfg = airlex::load_config(opts.config_path, opts.seed, opts.out_dir);
    if (opts.dry_run) {
        std::cout << airlex::dry_run_plan(cfg);
        return 0;
    }
    if (command == "train-expert") {
        airlex::run_train_expert(cfg, opts.force);
    } else if (command == "train-airl") {
        airlex::run_train_airl(cfg, opts.force);
    } else if (command == "analyze") {
        airlex::run_analyze(cfg, opts.force);
    } else {
        airlex::run_all(cfg, opts.force);
    }
    std::cout << command << ": done (artifacts in " << cfg.out_dir << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AIRL-based global interpretability pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;
    const char* commands[] = {"train-expert", "train-airl", "analyze", "run-all"};
    const char* descriptions[] = {
        "step 1: train the expert policy and collect its trajectories",
        "step 2: adversarial training of discriminator and novice",
        "step 3: score trajectories and build the analysis report",
        "run all three steps in order",
    };
    for (std::size_t i = 0; i < 4; ++i) add_common(app.add_subcommand(commands[i], descriptions[i]), opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        return dispatch(app.get_subcommands().at(0)->get_name(), opts);
    } catch (const airlex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const airlex::PipelineError& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
