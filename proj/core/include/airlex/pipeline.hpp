#pragma once

#include <map>
#include <string>

#include "airlex/config.hpp"

namespace airlex {

// Artifact file names under the output directory.
namespace artifacts {
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kExpertCheckpoint = "expert_checkpoint.json";
inline constexpr const char* kExpertCurve = "expert_curve.csv";
inline constexpr const char* kExpertTrajectories = "expert_trajectories.jsonl";
inline constexpr const char* kNoviceCheckpoint = "novice_checkpoint.json";
inline constexpr const char* kDiscCheckpoint = "disc_checkpoint.json";
inline constexpr const char* kAirlCurve = "airl_curve.csv";
inline constexpr const char* kScored = "scored_trajectories.jsonl";
inline constexpr const char* kScoredAlt = "scored_trajectories_alt.jsonl";
inline constexpr const char* kAnalysisDir = "analysis";
}  // namespace artifacts

struct StageRecord {
    bool done = false;
    std::map<std::string, std::string> artifact_checksums;
    double wall_seconds = 0.0;
};

struct Manifest {
    std::string config_hash;
    std::map<std::string, StageRecord> stages;  // expert, airl, analysis

    static Manifest load(const std::string& out_dir);
    void save(const std::string& out_dir) const;
    bool stage_done(const std::string& name) const;
};

/// Exclusive lock on an artifact directory; PipelineError if already held.
class DirLock {
  public:
    explicit DirLock(const std::string& out_dir);
    ~DirLock();
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

  private:
    std::string path_;
};

void run_train_expert(const PipelineConfig& cfg, bool force = false);
void run_train_airl(const PipelineConfig& cfg, bool force = false);
void run_analyze(const PipelineConfig& cfg, bool force = false);

/// Runs the three stages in order, skipping stages the manifest already
/// marks complete (resume); --force reruns everything.
void run_all(const PipelineConfig& cfg, bool force = false);

/// Validates the config and returns the stage plan without writing anything.
std::string dry_run_plan(const PipelineConfig& cfg);

std::string checksum_file(const std::string& path);

}  // namespace airlex
