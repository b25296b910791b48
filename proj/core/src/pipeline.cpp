#include "airlex/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "airlex/checkpoint.hpp"
#include "airlex/errors.hpp"
#include "airlex/report.hpp"

namespace airlex {

namespace fs = std::filesystem;
using nlohmann::json;

std::string checksum_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open artifact for checksum: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64_hex(buf.str());
}

Manifest Manifest::load(const std::string& out_dir) {
    Manifest m;
    const fs::path path = fs::path(out_dir) / artifacts::kManifest;
    if (!fs::exists(path)) return m;
    std::ifstream in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("malformed manifest " + path.string() + ": " + e.what());
    }
    m.config_hash = j.value("config_hash", "");
    const json stages = j.value("stages", json::object());
    for (const auto& [name, rec] : stages.items()) {
        StageRecord sr;
        sr.done = rec.value("done", false);
        sr.wall_seconds = rec.value("wall_seconds", 0.0);
        const json arts = rec.value("artifacts", json::object());
        for (const auto& [file, sum] : arts.items())
            sr.artifact_checksums[file] = sum.get<std::string>();
        m.stages[name] = std::move(sr);
    }
    return m;
}

void Manifest::save(const std::string& out_dir) const {
    json stages_json = json::object();
    for (const auto& [name, rec] : stages) {
        stages_json[name] = {{"done", rec.done},
                             {"wall_seconds", rec.wall_seconds},
                             {"artifacts", rec.artifact_checksums}};
    }
    json j{{"config_hash", config_hash}, {"stages", stages_json}};
    std::ofstream out(fs::path(out_dir) / artifacts::kManifest);
    if (!out) throw DataError("cannot write manifest in " + out_dir);
    out << j.dump(2) << "\n";
}

bool Manifest::stage_done(const std::string& name) const {
    auto it = stages.find(name);
    return it != stages.end() && it->second.done;
}

DirLock::DirLock(const std::string& out_dir) {
    fs::create_directories(out_dir);
    path_ = (fs::path(out_dir) / ".lock").string();
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        throw PipelineError("artifact directory " + out_dir +
                            " is locked by another invocation (remove " + path_ +
                            " if that run is dead)");
    }
    ::close(fd);
}

DirLock::~DirLock() { ::unlink(path_.c_str()); }

namespace {

struct StageTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

fs::path art(const PipelineConfig& cfg, const char* name) { return fs::path(cfg.out_dir) / name; }

/// Loads a manifest compatible with this config; a hash mismatch starts a
/// fresh manifest (stale stage flags are dropped).
Manifest open_manifest(const PipelineConfig& cfg) {
    Manifest m = Manifest::load(cfg.out_dir);
    if (m.config_hash != cfg.hash) {
        m = Manifest{};
        m.config_hash = cfg.hash;
    }
    return m;
}

void require_stage(const Manifest& m, const std::string& stage, const char* needed_artifact,
                   const PipelineConfig& cfg, bool force) {
    if (m.stage_done(stage)) return;
    if (force && fs::exists(art(cfg, needed_artifact))) return;
    throw PipelineError("stage '" + stage + "' has not completed (missing artifact " +
                        std::string(needed_artifact) + "); run it first or pass --force");
}

void check_artifact_hash(const std::string& artifact_hash, const PipelineConfig& cfg,
                         const std::string& path, bool force) {
    if (artifact_hash != cfg.hash && !force) {
        throw PipelineError("artifact " + path + " was produced under config hash " +
                            artifact_hash + ", current is " + cfg.hash +
                            "; rerun earlier stages or pass --force");
    }
}

std::vector<double> trajectory_log_probs(const Policy& policy, const Trajectory& traj) {
    std::vector<double> lp;
    lp.reserve(traj.steps.size());
    for (const TrajStep& st : traj.steps) lp.push_back(log_prob_of(policy, st.s, st.a));
    return lp;
}

std::vector<Trajectory> score_all(const std::vector<Trajectory>& trajs, const Discriminator& disc,
                                  const Policy& log_pi_policy) {
    std::vector<Trajectory> scored = trajs;
    for (Trajectory& traj : scored) {
        std::vector<double> rewards =
            score_trajectory(disc, traj, trajectory_log_probs(log_pi_policy, traj));
        for (std::size_t i = 0; i < traj.steps.size(); ++i) {
            traj.steps[i].reward_disc = rewards[i];
            traj.steps[i].has_reward_disc = true;
        }
    }
    return scored;
}

Policy load_policy(const fs::path& path, double temperature, const PipelineConfig& cfg,
                   bool force) {
    std::string hash;
    Policy p;
    p.net = load_mlp(path.string(), &hash);
    p.temperature = temperature;
    check_artifact_hash(hash, cfg, path.string(), force);
    return p;
}

}  // namespace

void run_train_expert(const PipelineConfig& cfg, bool force) {
    DirLock lock(cfg.out_dir);
    Manifest manifest = open_manifest(cfg);
    StageTimer timer;

    auto env = cfg.make_env();
    std::ofstream curve(art(cfg, artifacts::kExpertCurve));
    curve << "# config_hash=" << cfg.hash << "\n";
    curve << "iteration,mean_sampled_return,mean_greedy_return,loss\n";
    TrainExpertResult result = train_expert(*env, cfg.rl, [&](const IterStat& st) {
        curve << st.iteration << "," << fmt_double(st.mean_sampled_return) << ","
              << fmt_double(st.mean_greedy_return) << "," << fmt_double(st.loss) << "\n";
        curve.flush();
    });
    curve.close();

    save_mlp(result.policy.net, art(cfg, artifacts::kExpertCheckpoint).string(), cfg.hash);
    Policy collector = result.policy;
    collector.temperature = cfg.collect_temperature;
    std::vector<Trajectory> trajs = collect_trajectories(
        collector, *env, cfg.trajectory_count, derive_seed(cfg.seed, 300), cfg.rl.episode_pool);
    write_trajectories(trajs, art(cfg, artifacts::kExpertTrajectories).string(), cfg.hash);

    StageRecord rec;
    rec.done = true;
    rec.wall_seconds = timer.seconds();
    for (const char* f :
         {artifacts::kExpertCheckpoint, artifacts::kExpertCurve, artifacts::kExpertTrajectories})
        rec.artifact_checksums[f] = checksum_file(art(cfg, f).string());
    manifest.stages["expert"] = std::move(rec);
    manifest.save(cfg.out_dir);
}

void run_train_airl(const PipelineConfig& cfg, bool force) {
    DirLock lock(cfg.out_dir);
    Manifest manifest = open_manifest(cfg);
    require_stage(manifest, "expert", artifacts::kExpertTrajectories, cfg, force);
    StageTimer timer;

    TrajectoryFile expert = read_trajectories(art(cfg, artifacts::kExpertTrajectories).string());
    check_artifact_hash(expert.config_hash, cfg, artifacts::kExpertTrajectories, force);

    auto env = cfg.make_env();
    std::ofstream curve(art(cfg, artifacts::kAirlCurve));
    curve << "# config_hash=" << cfg.hash << "\n";
    curve << "iteration,disc_loss,disc_accuracy,novice_return\n";
    TrainAirlResult result =
        train_airl(expert.trajectories, *env, cfg.airl, nullptr, [&](const AirlIterStat& st) {
            curve << st.iteration << "," << fmt_double(st.disc_loss) << ","
                  << fmt_double(st.disc_accuracy) << "," << fmt_double(st.novice_return) << "\n";
            curve.flush();
        });
    curve.close();

    save_mlp(result.novice.net, art(cfg, artifacts::kNoviceCheckpoint).string(), cfg.hash);
    json disc_json{{"g", mlp_to_json(result.disc.g)},
                   {"h", mlp_to_json(result.disc.h)},
                   {"gamma", result.disc.gamma},
                   {"config_hash", cfg.hash}};
    std::ofstream disc_out(art(cfg, artifacts::kDiscCheckpoint));
    if (!disc_out) throw DataError("cannot write discriminator checkpoint");
    disc_out << disc_json.dump(2) << "\n";
    disc_out.close();

    StageRecord rec;
    rec.done = true;
    rec.wall_seconds = timer.seconds();
    for (const char* f :
         {artifacts::kNoviceCheckpoint, artifacts::kDiscCheckpoint, artifacts::kAirlCurve})
        rec.artifact_checksums[f] = checksum_file(art(cfg, f).string());
    manifest.stages["airl"] = std::move(rec);
    manifest.save(cfg.out_dir);
}

void run_analyze(const PipelineConfig& cfg, bool force) {
    DirLock lock(cfg.out_dir);
    Manifest manifest = open_manifest(cfg);
    require_stage(manifest, "expert", artifacts::kExpertTrajectories, cfg, force);
    require_stage(manifest, "airl", artifacts::kDiscCheckpoint, cfg, force);
    StageTimer timer;

    TrajectoryFile expert = read_trajectories(art(cfg, artifacts::kExpertTrajectories).string());
    check_artifact_hash(expert.config_hash, cfg, artifacts::kExpertTrajectories, force);
    if (expert.trajectories.empty())
        throw PipelineError("expert trajectory file is empty; rerun the expert stage");

    std::ifstream disc_in(art(cfg, artifacts::kDiscCheckpoint));
    if (!disc_in) throw PipelineError("missing discriminator checkpoint; run the airl stage");
    json disc_json;
    try {
        disc_in >> disc_json;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed discriminator checkpoint: ") + e.what());
    }
    check_artifact_hash(disc_json.value("config_hash", ""), cfg, artifacts::kDiscCheckpoint, force);
    Discriminator disc;
    disc.g = mlp_from_json(disc_json.at("g"));
    disc.h = mlp_from_json(disc_json.at("h"));
    disc.gamma = disc_json.at("gamma").get<double>();

    Policy novice =
        load_policy(art(cfg, artifacts::kNoviceCheckpoint), cfg.airl.temperature, cfg, force);
    Policy expert_policy =
        load_policy(art(cfg, artifacts::kExpertCheckpoint), cfg.rl.temperature, cfg, force);

    const bool novice_primary = cfg.analysis.log_pi_source == "novice";
    std::vector<Trajectory> scored =
        score_all(expert.trajectories, disc, novice_primary ? novice : expert_policy);
    std::vector<Trajectory> scored_alt =
        score_all(expert.trajectories, disc, novice_primary ? expert_policy : novice);
    write_trajectories(scored, art(cfg, artifacts::kScored).string(), cfg.hash);
    write_trajectories(scored_alt, art(cfg, artifacts::kScoredAlt).string(), cfg.hash);

    ReportConfig rc;
    rc.bins = cfg.analysis.bins;
    rc.norm = cfg.analysis.norm;
    rc.log_pi_mode = cfg.analysis.log_pi_source;
    rc.exclude_tags = cfg.analysis.exclude_tags;
    rc.config_hash = cfg.hash;
    rc.seed = cfg.seed;
    const fs::path analysis_dir = art(cfg, artifacts::kAnalysisDir);
    ReportResult report = build_report(scored, scored_alt, rc, analysis_dir.string());

    StageRecord rec;
    rec.done = true;
    rec.wall_seconds = timer.seconds();
    for (const char* f : {artifacts::kScored, artifacts::kScoredAlt})
        rec.artifact_checksums[f] = checksum_file(art(cfg, f).string());
    for (const std::string& f : report.files) {
        rec.artifact_checksums[std::string(artifacts::kAnalysisDir) + "/" + f] =
            checksum_file((analysis_dir / f).string());
    }
    manifest.stages["analysis"] = std::move(rec);
    manifest.save(cfg.out_dir);
}

void run_all(const PipelineConfig& cfg, bool force) {
    {
        Manifest manifest;
        {
            DirLock lock(cfg.out_dir);
            manifest = open_manifest(cfg);
        }
        if (force || !manifest.stage_done("expert")) run_train_expert(cfg, force);
        if (force || !manifest.stage_done("airl")) run_train_airl(cfg, force);
    }
    run_analyze(cfg, force);
}

std::string dry_run_plan(const PipelineConfig& cfg) {
    Manifest manifest = Manifest::load(cfg.out_dir);
    const bool fresh = manifest.config_hash != cfg.hash;
    std::ostringstream os;
    os << "config: " << cfg.config_path << " (hash " << cfg.hash << ")\n";
    os << "env: " << cfg.env_kind << ", seed: " << cfg.seed << ", out: " << cfg.out_dir << "\n";
    auto stage_line = [&](const char* name) {
        const bool done = !fresh && manifest.stage_done(name);
        os << "  " << name << ": " << (done ? "complete (will skip)" : "pending") << "\n";
    };
    os << "stages:\n";
    stage_line("expert");
    stage_line("airl");
    stage_line("analysis");
    return os.str();
}

}  // namespace airlex
