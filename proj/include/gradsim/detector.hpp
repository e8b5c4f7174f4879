#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gradsim/features.hpp"
#include "gradsim/influence.hpp"

namespace gradsim {

struct LogRegConfig {
  std::size_t epochs = 3000;
  double l2_reg = 1e-4;
  double tol = 1e-7;  // stop when the gradient norm falls below this
  bool balance_classes = false;  // weight each class by half its inverse frequency
  std::uint64_t seed = 1;
};

struct LogRegDetector {
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t feature_dim = 0;
  std::string attack_mix;
  std::string schema;  // feature layout description
  std::uint64_t seed = 0;
  std::size_t epochs_run = 0;

  double margin(std::span<const double> v) const;  // w·v + b
  double score(std::span<const double> v) const;   // sigmoid(margin)
  bool decision(std::span<const double> v, double threshold = 0.5) const { return score(v) >= threshold; }
};

// Full-batch accelerated gradient descent on the mean logistic loss plus
// (l2_reg/2)||w||², fitted on standardized columns and mapped back to raw
// features. Deterministic.
LogRegDetector train_logreg(const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
                            const LogRegConfig& config = {});

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Threshold sweep over distinct scores (descending), tied scores grouped.
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);
void write_roc_csv(const RocCurve& roc, const std::filesystem::path& path, const std::string& trailer = "");

struct ThresholdDetector {
  double tau_n = 0.0;
  double tau_c = 0.0;
  bool use_n = true;
  bool use_c = true;
  double mean_n = 0.0, sd_n = 0.0;
  double mean_mc = 0.0, sd_mc = 0.0;
  double target_fpr = 0.0;
  std::vector<std::string> warnings;

  // Flags adversarial iff N > tau_n or MC < tau_c (disabled thresholds never fire).
  bool flags(double n, double max_cosine) const;
  bool flags(const FeatureVector& f) const { return flags(f.n, f.max_cosine); }
};

// Linear-interpolation quantile of a sample, q in [0,1].
double quantile(std::vector<double> values, double q);

ThresholdDetector fit_threshold_detector(const std::vector<FeatureVector>& normal, double target_fpr);
// z(N) − z(MC) under the normal-sample standardization.
double threshold_score(const ThresholdDetector& det, double n, double max_cosine);
double threshold_score(const ThresholdDetector& det, const FeatureVector& f);

// Seeded split of row indices, stratified by group label.
struct IndexSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
IndexSplit stratified_index_split(const std::vector<std::string>& groups, double train_fraction, std::uint64_t seed);

struct LooFold {
  std::string held_out;
  bool skipped = false;
  std::string notice;
  double accuracy = 0.0;          // over held-out normal + adversarial rows
  double adversarial_recall = 0.0;
  double normal_accuracy = 0.0;
  double auc = 0.0;
  std::size_t n_normal = 0, n_adversarial = 0;
};

struct LooConfig {
  LogRegConfig logreg{.balance_classes = true};
  double train_fraction = 0.7;  // of normal rows used for training
  std::uint64_t seed = 1;
};

// `normal` rows are benign feature rows; `adversarial` maps attack name to rows.
// Each fold trains on normal(train part) + every other attack and tests on
// normal(test part) + the held-out attack at the 0.5 threshold.
std::vector<LooFold> leave_one_out_eval(const std::vector<std::vector<double>>& normal,
                                        const std::map<std::string, std::vector<std::vector<double>>>& adversarial,
                                        const LooConfig& config = {});

void save_logreg(const LogRegDetector& det, const std::filesystem::path& path);
LogRegDetector load_logreg(const std::filesystem::path& path);
void save_threshold_detector(const ThresholdDetector& det, const std::filesystem::path& path);
ThresholdDetector load_threshold_detector(const std::filesystem::path& path);

}  // namespace gradsim
