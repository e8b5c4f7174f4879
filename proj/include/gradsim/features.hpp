#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gradsim/data.hpp"

namespace gradsim {

// Which class label the test-input gradient is taken against.
enum class LabelPolicy { Predicted, True };
std::string label_policy_name(LabelPolicy policy);
LabelPolicy parse_label_policy(const std::string& name);

// Fixed training subset with cached parameter gradients.
struct ReferenceSet {
  std::vector<LabeledExample> points;
  std::vector<std::size_t> source_indices;  // positions in the training set
  std::vector<Tensor> gradients;
  std::vector<double> norms;
  std::uint64_t model_checksum = 0;
  std::uint64_t seed = 0;
  std::string selection;

  std::size_t size() const { return points.size(); }
};

// Stratified, seeded selection of n training points. Points whose loss
// gradient is exactly zero are skipped in favour of the next candidate of the
// same class, since their cosine is undefined.
ReferenceSet build_reference_set(const Model& model, const Dataset& train, std::size_t n, std::uint64_t seed,
                                 std::size_t workers = 1);
// Throws when the cache was built against different parameters.
void check_reference_set(const Model& model, const ReferenceSet& refs);
// Recomputes every cached gradient and compares bit-exactly.
bool reference_cache_coherent(const Model& model, const ReferenceSet& refs);

// Points, labels and provenance only; gradients are recomputed on load.
void save_reference_set(const ReferenceSet& refs, const std::filesystem::path& path);
ReferenceSet load_reference_set(const std::filesystem::path& path);
// Fills gradients and norms after checking the model checksum.
void attach_reference_gradients(const Model& model, ReferenceSet& refs, std::size_t workers = 1);

// GS(x*, x') = ∇θL(x')ᵀ ∇θL(x*), each with its own label.
double gradient_similarity(const Model& model, const LabeledExample& x_train, const LabeledExample& x_test);

struct FeatureVector {
  double n = 0.0;
  std::vector<double> cosines;
  double max_cosine = 0.0;
  std::size_t label_used = 0;
};

// Throws std::domain_error("undefined cosine ...") when the test gradient is zero.
FeatureVector feature_vector(const Model& model, const ReferenceSet& refs, const Tensor& x, LabelPolicy policy,
                             std::optional<std::size_t> true_label = std::nullopt);
// Features from an already computed test gradient.
FeatureVector feature_vector_from_gradient(const ReferenceSet& refs, const Tensor& g, std::size_t label_used);

struct FeatureInput {
  Tensor x;
  std::size_t source_label = 0;  // true label of the (original) input
  bool is_adversarial = false;
  std::string attack_name;  // "none" for normal inputs
};

struct FeatureRow {
  FeatureVector features;
  std::size_t source_label = 0;
  bool is_adversarial = false;
  std::string attack_name;
  std::size_t input_index = 0;
};

struct FeatureMatrix {
  std::size_t num_references = 0;
  std::vector<FeatureRow> rows;
  std::vector<std::pair<std::size_t, std::string>> failures;  // input index, reason
};

FeatureMatrix build_feature_matrix(const Model& model, const ReferenceSet& refs, const std::vector<FeatureInput>& inputs,
                                   LabelPolicy policy, std::size_t workers = 1);

// Header: n,c_0001..c_NNNN,max_cosine,source_label,is_adversarial,attack_name
void write_feature_csv(const FeatureMatrix& m, const std::filesystem::path& path, const std::string& trailer = "");
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

// Grey-box logistic detector input: the cosine values alone.
std::vector<double> detector_features(const FeatureVector& f);

}  // namespace gradsim
