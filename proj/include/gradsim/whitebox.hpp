#pragma once

#include <optional>
#include <string>

#include "gradsim/adversarial_set.hpp"
#include "gradsim/attacks.hpp"
#include "gradsim/detector.hpp"
#include "gradsim/features.hpp"

namespace gradsim {

struct GuidePoint {
  std::size_t ref_index = 0;
  double cosine_at_selection = 0.0;
};

// Reference point with the largest cosine to the gradient of x under label y
// (lowest index on ties).
GuidePoint select_guide(const Model& model, const ReferenceSet& refs, const Tensor& x, std::size_t label);

// Evasion terms evaluated at an input x':
//   w_n·N(x') + w_c·max(1 − C(x_g, x'), 0)
// optionally plus the C&W pieces ||x' − x0||² + c·(margin toward target) (WB-1).
// N and C use the loss gradient at `label`.
struct EvasionObjective {
  std::size_t label = 0;
  Tensor guide_gradient;
  double weight_n = 1.0;
  double weight_c = 1.0;
  // WB-1 only.
  bool include_cw = false;
  Tensor x0;
  std::size_t target = 0;
  double kappa = 0.0;
  double c = 1.0;
};

struct ObjectiveTerms {
  double total = 0.0;
  double n = 0.0;
  double cosine = 0.0;
  double hinge = 0.0;
  double distance2 = 0.0;
  double margin = 0.0;
};

// Graph node for the objective at x (batched [1, input...] var); builds a
// second-order graph through ∇θL.
ad::Var evasion_objective(const Model& model, std::span<const ad::Var> params, const ad::Var& x,
                          const EvasionObjective& objective, ObjectiveTerms* terms = nullptr);
// Value and optional input gradient at a plain tensor.
double evasion_objective_value(const Model& model, const Tensor& x, const EvasionObjective& objective,
                               Tensor* grad = nullptr, ObjectiveTerms* terms = nullptr);

struct WhiteboxConfig {
  AttackKind base_attack = AttackKind::CW;  // WB-2 phase one
  AttackConfig base_config = default_attack_config(AttackKind::CW);
  double learning_rate = 0.01;
  std::size_t iterations = 200;
  double c = 1.0;        // WB-1 weight on the combined loss
  double kappa = 0.0;    // WB-1 confidence
  double weight_n = 1.0;
  double weight_c = 1.0;
};

struct WhiteboxResult {
  std::string status;  // "ok", "phase-one-failed"
  AttackResult attack;  // success = misclassified and passed by the detector
  bool misclassified = false;
  bool evades_detector = false;
  FeatureVector features;  // detector features of the final input (predicted label)
  GuidePoint guide;
  std::string phase_one;
  std::size_t rejected_steps = 0;
};

// One-phase C&W with the evasion terms inside the loss, aimed at the
// runner-up class of x. Keeps the lowest-L2 iterate that is misclassified and
// passed by the detector, otherwise the last iterate.
WhiteboxResult wb1_cw(const Model& model, const ReferenceSet& refs, const ThresholdDetector& detector, const Tensor& x,
                      std::size_t y, const WhiteboxConfig& config);

// Phase one: the configured grey-box attack. Phase two: Adam in tanh space on
// N + max(1 − C(x_g, ·), 0), rejecting any step whose prediction returns to y
// (revert, halve the step). Stops early once the detector passes the iterate.
WhiteboxResult wb2(const Model& model, const ReferenceSet& refs, const ThresholdDetector& detector, const Tensor& x,
                   std::size_t y, const WhiteboxConfig& config);

// Manifest metadata columns for adversarial-set persistence.
std::vector<std::pair<std::string, std::string>> whitebox_metadata(const WhiteboxResult& r);

}  // namespace gradsim
