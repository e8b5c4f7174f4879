#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradsim/model.hpp"

namespace gradsim {

enum class AttackKind { FGSM, BIM_A, BIM_B, JSMA, CW, DeepFool };
enum class BimVariant { A, B };

std::string attack_name(AttackKind kind);
AttackKind parse_attack(std::string_view name);
const std::vector<AttackKind>& all_attacks();

struct AttackConfig {
  double epsilon = 0.3;
  std::size_t iterations = 10;
  double step_size = 0.0;  // BIM per-step size; 0 means epsilon / iterations
  double kappa = 0.0;
  double c = 1.0;
  double learning_rate = 0.01;
  std::size_t binary_search_steps = 0;  // C&W search over c; 0 keeps c fixed
  double overshoot = 0.02;
  std::optional<std::size_t> target;
  std::size_t max_features = 0;  // JSMA budget; 0 means 10% of the input dimension
  std::uint64_t seed = 0;

  void validate() const;
};

struct AttackResult {
  Tensor x_adv;
  bool success = false;
  double l2 = 0.0;
  double linf = 0.0;
  std::size_t iterations_used = 0;
  std::size_t predicted_class = 0;
  std::size_t original_label = 0;
  std::optional<std::size_t> target;
};

// Recomputes prediction, success flag and distortions from the tensors.
AttackResult make_result(const Model& model, const Tensor& x, std::size_t y, Tensor x_adv,
                         std::optional<std::size_t> target, std::size_t iterations_used);

// Single-feature saliency from the Jacobian of the class probabilities F:
//   s[i] = 0 if dF_t/dx_i < 0 or sum_{j!=t} dF_j/dx_i > 0, else dF_t/dx_i * |sum_{j!=t} dF_j/dx_i|.
// With increase = false the same rule is applied to the negated derivatives.
Tensor saliency_map(const Model& model, const Tensor& x, std::size_t target, bool increase = true);

AttackResult fgsm(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config);
AttackResult fgsm_binary(const Model& model, const Tensor& x, std::size_t y);
AttackResult bim(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config, BimVariant variant);
AttackResult bim_binary(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config,
                        BimVariant variant);
// Targeted; requires config.target. Binary domains flip features instead of adding epsilon.
AttackResult jsma(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config);
// Targeted when config.target is set, otherwise the lowest-L2 success over all targets != y.
AttackResult cw_l2(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config);
AttackResult deepfool(const Model& model, const Tensor& x, std::size_t y, const AttackConfig& config);

// C&W misclassification term max(max_{i!=t} Z_i - Z_t, -kappa) on a logits row.
double cw_margin(std::span<const double> logits, std::size_t target, double kappa);

// Dispatches to the continuous or binary variant according to the model domain.
AttackResult run_attack(AttackKind kind, const Model& model, const Tensor& x, std::size_t y,
                        const AttackConfig& config);

// Deterministic target class != y for targeted attacks on input `index`.
std::size_t choose_target(std::size_t y, std::size_t num_classes, std::uint64_t seed, std::size_t index);

// Default per-attack settings used by the experiments (epsilon 0.3, ten BIM
// steps, 100 C&W iterations, unit JSMA step).
AttackConfig default_attack_config(AttackKind kind);

}  // namespace gradsim
