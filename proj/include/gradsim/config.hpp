#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradsim/attacks.hpp"
#include "gradsim/data.hpp"
#include "gradsim/detector.hpp"
#include "gradsim/features.hpp"
#include "gradsim/model.hpp"

namespace gradsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetSection {
  std::string kind = "mnist";  // mnist | synthetic-binary | binary-csv
  std::filesystem::path images = "data/mnist/images-idx3-ubyte.gz";
  std::filesystem::path labels = "data/mnist/labels-idx1-ubyte.gz";
  std::filesystem::path csv;
  std::size_t n_train = 8000;
  std::size_t n_test = 2000;
  std::uint64_t seed = 42;
  SynthBinaryConfig synthetic;
};

struct ModelSection {
  std::string architecture;  // empty selects the default for the dataset
  std::uint64_t init_seed = 1;
};

struct AttackEntry {
  AttackKind kind = AttackKind::FGSM;
  AttackConfig config;
};

struct AttacksSection {
  std::vector<AttackEntry> list;
  std::size_t n_inputs = 300;  // leading test points attacked by every attack
  std::uint64_t seed = 1;      // JSMA target selection
};

struct ReferenceSection {
  std::size_t size = 1000;
  std::uint64_t seed = 1;
  LabelPolicy label_policy = LabelPolicy::Predicted;
};

struct DetectorSection {
  LogRegConfig logreg;
  double train_fraction = 0.7;
  std::uint64_t seed = 1;
  double target_fpr = 0.05;
  std::size_t n_validation = 500;  // test points after the attacked ones, for the threshold detector
};

struct WhiteboxSection {
  bool enabled = true;
  std::vector<std::string> attacks{"WB1-CW", "WB2-FGSM", "WB2-BIM-A", "WB2-BIM-B", "WB2-CW"};
  std::size_t n_inputs = 50;
  std::size_t iterations = 200;
  double learning_rate = 0.01;
  double c = 1.0;
  double kappa = 0.0;
  double weight_n = 1.0;
  double weight_c = 1.0;
};

struct InfluenceSection {
  std::vector<double> dampings{0.001, 0.01, 0.1};
  std::size_t hvp_points = 100;
  std::size_t equivalence_points = 20;
  double l2_reg = 0.0;
  double cg_tol = 1e-6;
  std::size_t cg_max_iter = 100;
  std::uint64_t seed = 1;
  // Convex retraining experiment.
  std::size_t fidelity_points = 200;
  std::size_t fidelity_dim = 3;
  double fidelity_l2 = 0.01;
  std::uint64_t fidelity_seed = 8;
  std::vector<double> fidelity_test_point{0.2, -0.3, 0.1};
  std::size_t fidelity_test_label = 1;
};

struct OutputSection {
  std::filesystem::path dir = "runs/default";
  std::filesystem::path cache_dir;  // empty: <dir>/cache
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t workers = 0;  // 0: logical cores
  DatasetSection dataset;
  ModelSection model;
  TrainConfig train;
  AttacksSection attacks;
  ReferenceSection reference_set;
  DetectorSection detector;
  WhiteboxSection whitebox;
  InfluenceSection influence;
  OutputSection output;
  std::filesystem::path base_dir;  // directory that relative paths resolve against

  std::filesystem::path resolve(const std::filesystem::path& p) const;
  std::size_t effective_workers() const;
  bool binary_domain() const { return dataset.kind != "mnist"; }
};

// Parses JSON text; unknown keys and type mismatches throw ConfigError.
// Overrides are "section.key=value" with JSON values (bare strings allowed).
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir,
                              const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

// Fully resolved config with every default filled in.
std::string dump_config(const ExperimentConfig& config);
// Hash of the resolved config without output paths and worker count.
std::string config_hash(const ExperimentConfig& config);

// Hash of a named subset of the resolved config, for stage cache keys.
std::string section_json(const ExperimentConfig& config, const std::string& section);

}  // namespace gradsim
