#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "airlex/errors.hpp"
#include "airlex/pipeline.hpp"
#include "airlex/report.hpp"

using namespace airlex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& stem) {
        path = fs::temp_directory_path() / ("airlex_" + stem + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_grid_config(const fs::path& dir, std::uint64_t seed, const std::string& out_dir,
                              std::size_t rl_iters = 3, std::size_t airl_iters = 3) {
    const std::string path = (dir / "config.json").string();
    std::ofstream out(path);
    out << R"({
  "env": {"kind": "grid", "width": 3, "height": 3, "goal": [2, 2], "max_steps": 6, "gamma": 0.99},
  "rl": {"iterations": )" << rl_iters << R"(, "batch_episodes": 2, "hidden": [8]},
  "airl": {"iterations": )" << airl_iters << R"(, "episodes_per_iter": 2, "expert_batch": 8, "hidden_disc": [8]},
  "trajectory_count": 4,
  "seed": )" << seed << R"(,
  "out_dir": ")" << out_dir << R"("
})";
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

Trajectory scored_traj(const std::string& id, std::initializer_list<const char*> surfaces,
                       double base_reward) {
    Trajectory t;
    t.id = id;
    double r = base_reward;
    for (const char* s : surfaces) {
        TrajStep st;
        st.s = Tensor::vec({1.0});
        st.s_next = Tensor::vec({1.0});
        st.token_surface = s;
        st.token_tag = std::string(s).size() > 2 ? "long" : "short";
        st.reward_disc = r;
        st.has_reward_disc = true;
        r += 0.5;
        t.steps.push_back(st);
    }
    return t;
}

}  // namespace

TEST_CASE("fnv1a64 matches published test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("fmt_double: fixed %.12g format") {
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt_double(-0.0) == "-0");
}

TEST_CASE("load_config: defaults and derived seeds") {
    TempDir tmp("cfg");
    std::string path = write_grid_config(tmp.path, 7, (tmp.path / "out").string());
    PipelineConfig cfg = load_config(path);
    CHECK(cfg.env_kind == "grid");
    CHECK(cfg.seed == 7);
    CHECK(cfg.rl.seed == derive_seed(7, 100));
    CHECK(cfg.airl.seed == derive_seed(7, 200));
    CHECK(cfg.airl.gamma == cfg.grid.gamma);
    CHECK(cfg.airl.hidden_policy == cfg.rl.hidden);
    CHECK(cfg.analysis.bins == 8);
    CHECK(cfg.analysis.log_pi_source == "novice");
    CHECK(cfg.analysis.exclude_tags == std::set<std::string>{"eos"});
    CHECK(cfg.collect_temperature == cfg.rl.temperature);
    CHECK_FALSE(cfg.hash.empty());
}

TEST_CASE("load_config: collection temperature and analysis tag filter") {
    TempDir tmp("cfgextra");
    const std::string path = (tmp.path / "cfg.json").string();
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid"},
                   "rl": {"temperature": 2.0, "collect_temperature": 0.5},
                   "analysis": {"exclude_tags": ["eos", "pad"]}})";
    }
    PipelineConfig cfg = load_config(path);
    CHECK(cfg.rl.temperature == 2.0);
    CHECK(cfg.collect_temperature == 0.5);
    CHECK(cfg.analysis.exclude_tags == std::set<std::string>({"eos", "pad"}));
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid"}, "rl": {"collect_temperature": 0.0}})";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid"}, "analysis": {"exclude_tags": "eos"}})";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("load_config: unknown keys are named") {
    TempDir tmp("cfgbad");
    const std::string path = (tmp.path / "bad.json").string();
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid"}, "learning_rate": 0.1})";
    }
    try {
        load_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("$.learning_rate") != std::string::npos);
    }
}

TEST_CASE("load_config: nested unknown key and bad kinds") {
    TempDir tmp("cfgbad2");
    const std::string path = (tmp.path / "bad.json").string();
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid", "gama": 0.9}})";
    }
    try {
        load_config(path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("$.env.gama") != std::string::npos);
    }
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "maze"}})";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "grid", "gamma": 1.5}})";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    {
        std::ofstream out(path);
        out << R"({"env": {"kind": "token"}})";  // vocab_path required
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
    CHECK_THROWS_AS(load_config((tmp.path / "missing.json").string()), ConfigError);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("load_config: hash covers seed but not out_dir") {
    TempDir tmp("cfghash");
    std::string p1 = write_grid_config(tmp.path, 7, "outA");
    PipelineConfig a = load_config(p1);
    PipelineConfig b = load_config(p1, {}, std::string("outB"));
    CHECK(a.hash == b.hash);  // out_dir excluded from the hash
    PipelineConfig c = load_config(p1, 8, {});
    CHECK(c.seed == 8);
    CHECK(c.rl.seed == derive_seed(8, 100));
    CHECK(c.hash != a.hash);  // seed override changes the effective config
}

TEST_CASE("manifest: round-trip and stage flags") {
    TempDir tmp("manifest");
    Manifest m;
    m.config_hash = "abc";
    StageRecord rec;
    rec.done = true;
    rec.wall_seconds = 1.5;
    rec.artifact_checksums["f.csv"] = "123";
    m.stages["expert"] = rec;
    m.save(tmp.path.string());
    Manifest r = Manifest::load(tmp.path.string());
    CHECK(r.config_hash == "abc");
    CHECK(r.stage_done("expert"));
    CHECK_FALSE(r.stage_done("airl"));
    CHECK(r.stages.at("expert").artifact_checksums.at("f.csv") == "123");
    CHECK(r.stages.at("expert").wall_seconds == 1.5);
    // absent manifest loads empty
    Manifest empty = Manifest::load((tmp.path / "nowhere").string());
    CHECK(empty.config_hash.empty());
}

TEST_CASE("dir lock: second holder is rejected, release on destruction") {
    TempDir tmp("lock");
    {
        DirLock lock(tmp.path.string());
        CHECK_THROWS_AS(DirLock{tmp.path.string()}, PipelineError);
    }
    DirLock again(tmp.path.string());  // released by the destructor above
}

TEST_CASE("build_report: files, self-consistency, determinism") {
    TempDir tmp("report");
    std::vector<Trajectory> scored = {scored_traj("t0", {"aa", "bbb", "aa"}, 0.1),
                                      scored_traj("t1", {"cccc", "aa"}, -0.2)};
    ReportConfig rc;
    rc.config_hash = "feed";
    rc.seed = 5;
    const std::string dir = (tmp.path / "analysis").string();
    ReportResult r = build_report(scored, scored, rc, dir);
    for (const char* f :
         {"pos_summary.csv", "mi_scores.csv", "avg_method1.svg", "avg_method2.svg", "report.md"})
        CHECK(fs::exists(fs::path(dir) / f));

    // NMI self-consistency against the standalone operations
    Tables tables = build_tables(scored);
    CharacteristicSeries series = characteristic_series(tables.rewards, tables.features);
    CHECK(r.nmi_tag.value ==
          doctest::Approx(normalized_mi(series.tag_ids, series.rewards, rc.bins).value));

    const std::string report_md = slurp(fs::path(dir) / "report.md");
    CHECK(report_md.find("config_hash: feed") != std::string::npos);
    CHECK(report_md.find("Spearman") != std::string::npos);
    CHECK(report_md.find("Alternate log-prob source") != std::string::npos);
    const std::string pos_csv = slurp(fs::path(dir) / "pos_summary.csv");
    CHECK(pos_csv.find("tag,n_s,avg_m1,avg_m2,rank_m1,rank_m2") != std::string::npos);

    // byte-identical on a second run
    const std::string dir2 = (tmp.path / "analysis2").string();
    build_report(scored, scored, rc, dir2);
    for (const char* f : {"pos_summary.csv", "mi_scores.csv", "report.md", "avg_method1.svg"})
        CHECK(slurp(fs::path(dir) / f) == slurp(fs::path(dir2) / f));

    CHECK_THROWS_AS(build_report({}, {}, rc, dir), PipelineError);
}

TEST_CASE("pipeline: expert stage writes artifacts and the manifest") {
    TempDir tmp("stage1");
    const std::string out = (tmp.path / "out").string();
    PipelineConfig cfg = load_config(write_grid_config(tmp.path, 3, out));
    run_train_expert(cfg);
    for (const char* f : {artifacts::kExpertCheckpoint, artifacts::kExpertCurve,
                          artifacts::kExpertTrajectories, artifacts::kManifest})
        CHECK(fs::exists(fs::path(out) / f));
    // header comment + column header + one row per iteration
    CHECK(count_lines(fs::path(out) / artifacts::kExpertCurve) == 2 + cfg.rl.iterations);
    Manifest m = Manifest::load(out);
    CHECK(m.config_hash == cfg.hash);
    CHECK(m.stage_done("expert"));
    CHECK_FALSE(fs::exists(fs::path(out) / ".lock"));  // lock released
    TrajectoryFile trajs = read_trajectories((fs::path(out) / artifacts::kExpertTrajectories).string());
    CHECK(trajs.config_hash == cfg.hash);
    CHECK(trajs.trajectories.size() == cfg.trajectory_count);
}

TEST_CASE("pipeline: airl and analyze refuse to run out of order") {
    TempDir tmp("order");
    const std::string out = (tmp.path / "out").string();
    PipelineConfig cfg = load_config(write_grid_config(tmp.path, 3, out));
    CHECK_THROWS_AS(run_train_airl(cfg), PipelineError);
    CHECK_THROWS_AS(run_analyze(cfg), PipelineError);
}

TEST_CASE("pipeline: run_all end-to-end, stale-hash refusal, resume") {
    TempDir tmp("runall");
    const std::string out = (tmp.path / "out").string();
    std::string cfg_path = write_grid_config(tmp.path, 3, out);
    PipelineConfig cfg = load_config(cfg_path);
    run_all(cfg);
    for (const char* f : {artifacts::kScored, artifacts::kScoredAlt})
        CHECK(fs::exists(fs::path(out) / f));
    CHECK(fs::exists(fs::path(out) / artifacts::kAnalysisDir / "report.md"));
    Manifest m = Manifest::load(out);
    CHECK(m.stage_done("expert"));
    CHECK(m.stage_done("airl"));
    CHECK(m.stage_done("analysis"));

    // scored file carries discriminator rewards on every step
    TrajectoryFile scored = read_trajectories((fs::path(out) / artifacts::kScored).string());
    for (const Trajectory& t : scored.trajectories)
        for (const TrajStep& st : t.steps) CHECK(st.has_reward_disc);

    // a different seed invalidates the manifest: later stages refuse
    PipelineConfig other = load_config(cfg_path, 99, {});
    CHECK_THROWS_AS(run_train_airl(other), PipelineError);

    // resume: completed training stages are skipped, analysis reruns
    fs::remove(fs::path(out) / artifacts::kExpertCurve);
    fs::remove(fs::path(out) / artifacts::kAirlCurve);
    run_all(cfg);
    CHECK_FALSE(fs::exists(fs::path(out) / artifacts::kExpertCurve));  // expert was skipped
    CHECK_FALSE(fs::exists(fs::path(out) / artifacts::kAirlCurve));    // airl was skipped
    CHECK(fs::exists(fs::path(out) / artifacts::kAnalysisDir / "report.md"));

    // --force reruns everything, recreating the curves
    run_all(cfg, true);
    CHECK(fs::exists(fs::path(out) / artifacts::kExpertCurve));
    CHECK(fs::exists(fs::path(out) / artifacts::kAirlCurve));
}

TEST_CASE("dry_run_plan reports pending and completed stages") {
    TempDir tmp("plan");
    const std::string out = (tmp.path / "out").string();
    PipelineConfig cfg = load_config(write_grid_config(tmp.path, 3, out, 2, 2));
    std::string before = dry_run_plan(cfg);
    CHECK(before.find("expert: pending") != std::string::npos);
    run_train_expert(cfg);
    std::string after = dry_run_plan(cfg);
    CHECK(after.find("expert: complete (will skip)") != std::string::npos);
    CHECK(after.find("airl: pending") != std::string::npos);
}
