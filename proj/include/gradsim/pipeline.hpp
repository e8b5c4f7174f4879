#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradsim/adversarial_set.hpp"
#include "gradsim/config.hpp"
#include "gradsim/features.hpp"

namespace gradsim {

enum class Stage { Train, Attack, Features, Detect, Loo, Whitebox, Influence, Equivalence, Report, All };

std::string stage_name(Stage stage);
Stage parse_stage(const std::string& name);

struct StageError : std::runtime_error {
  StageError(Stage s, const std::string& message)
      : std::runtime_error("stage " + stage_name(s) + " failed: " + message), stage(s) {}
  Stage stage;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitStageFailure = 3;

// Report file names written into the output directory.
inline constexpr const char* kAccuracyTable = "accuracy_table.csv";
inline constexpr const char* kDirectionTables = "direction_tables.csv";
inline constexpr const char* kLooTable = "loo_table.csv";
inline constexpr const char* kGreyboxAuc = "greybox_auc.csv";
inline constexpr const char* kWhiteboxTable = "whitebox_table.csv";
inline constexpr const char* kEquivalence = "equivalence.csv";
inline constexpr const char* kInfluenceFidelity = "influence_fidelity.csv";
inline constexpr const char* kManifest = "run_manifest.json";

// Staged experiment driver. Every stage caches its artifacts under the cache
// root keyed by a hash of the config sections it depends on; a stage whose key
// and artifacts are intact is skipped and its reports are copied again.
class Pipeline {
 public:
  Pipeline(ExperimentConfig config, std::ostream& log);

  // Runs the stage together with any upstream stages it needs.
  void run(Stage stage);

  const ExperimentConfig& config() const { return config_; }
  std::filesystem::path output_dir() const { return output_; }
  std::filesystem::path cache_dir() const { return cache_; }
  // Stages executed (not skipped) by this object so far.
  const std::vector<std::string>& executed() const { return executed_; }

 private:
  struct Data;

  std::string stage_key(Stage stage);
  bool up_to_date(Stage stage, const std::string& key, const std::vector<std::filesystem::path>& artifacts) const;
  void mark_done(Stage stage, const std::string& key);
  void publish(Stage stage, const std::vector<std::string>& reports);
  std::string trailer() const;
  std::filesystem::path stage_dir(Stage stage) const;

  const Data& data();
  const Model& model();
  const ReferenceSet& references();
  const AdversarialSet& adversarial(const std::string& attack);
  const FeatureMatrix& features(const std::string& group);

  void stage_train();
  void stage_attack();
  void stage_features();
  void stage_detect();
  void stage_loo();
  void stage_whitebox();
  void stage_influence();
  void stage_equivalence();
  void stage_report();
  void dispatch(Stage stage);

  ExperimentConfig config_;
  std::ostream& log_;
  std::filesystem::path output_;
  std::filesystem::path cache_;
  std::string hash_;
  std::vector<std::string> executed_;
  std::map<Stage, bool> done_;

  std::shared_ptr<Data> data_;
  std::optional<Model> model_;
  std::optional<ReferenceSet> refs_;
  std::map<std::string, AdversarialSet> adversarial_;
  std::map<std::string, FeatureMatrix> features_;
};

// Config path plus overrides to an exit code; errors are reported on `err`.
int run_pipeline(const std::filesystem::path& config_path, Stage stage, const std::vector<std::string>& overrides,
                 std::ostream& out, std::ostream& err);

}  // namespace gradsim
