#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gradsim/model.hpp"

namespace gradsim {

// Second-order view of an empirical risk
//   R(θ) = (1/|refs|) Σ L(θ, x, y) + (l2_reg/2) ||θ||²
// with products against H + damping·I.
class HvpContext {
 public:
  // Builds the scalar risk from parameter vars.
  using RiskFn = std::function<ad::Var(std::span<const ad::Var> params)>;

  HvpContext(const Model& model, std::vector<LabeledExample> reference_set, double damping, double l2_reg = 0.0,
             std::size_t batch_size = 250);
  // Generic risk over an explicit parameter list (used for synthetic Hessians).
  HvpContext(std::vector<Tensor> params, RiskFn risk, double damping);

  std::size_t dimension() const { return dim_; }
  double damping() const { return damping_; }
  double l2_reg() const { return l2_reg_; }
  const Model* model() const { return model_ ? &*model_ : nullptr; }

  // (H + damping·I) v without forming H.
  Tensor hvp(const Tensor& v) const;
  // Flat parameter gradient of the single-example loss (no regularizer).
  Tensor example_gradient(const LabeledExample& example) const;
  // Flat gradient of R.
  Tensor risk_gradient() const;

  HvpContext with_damping(double damping) const;

 private:
  Tensor hvp_of(const RiskFn& risk, const Tensor& v) const;

  std::optional<Model> model_;
  std::vector<LabeledExample> refs_;
  std::vector<Tensor> params_;
  RiskFn risk_;
  double damping_ = 0.0;
  double l2_reg_ = 0.0;
  std::size_t batch_size_ = 250;
  std::size_t dim_ = 0;
};

struct CgConfig {
  double tol = 1e-8;  // on ||(H+λI)v − g|| / ||g||
  std::size_t max_iter = 200;
};

struct InverseHvpResult {
  Tensor v;
  double residual_norm = 0.0;  // recomputed relative residual of the returned v
  std::size_t iterations = 0;
};

// Conjugate-gradient solve of (H + damping·I) v = g. Throws std::domain_error on
// non-positive curvature along a search direction.
InverseHvpResult inverse_hvp(const HvpContext& ctx, const Tensor& g, const CgConfig& config = {});

// ||(H + damping·I) v − g||₂ / ||g||₂ (0 when g = 0).
double relative_residual(const HvpContext& ctx, const Tensor& v, const Tensor& g);

// −g'ᵀ (H + damping·I)⁻¹ g* for a model-backed context.
double influence(const HvpContext& ctx, const LabeledExample& x_train, const LabeledExample& x_test,
                 const CgConfig& config = {});
double influence_from_gradients(const HvpContext& ctx, const Tensor& g_train, const Tensor& g_test,
                                const CgConfig& config = {});

struct SummaryStats {
  std::size_t count = 0;
  double min = 0.0, max = 0.0, mean = 0.0, median = 0.0, variance = 0.0;
};
SummaryStats summarize(std::vector<double> values);

struct EquivalencePoint {
  std::size_t index = 0;
  double ratio = 0.0;   // ||g|| / ||H⁻¹g||
  double cosine = 0.0;  // cos(H⁻¹g, g)
  double residual = 0.0;
  std::size_t iterations = 0;
  std::string error;  // non-empty when the solve failed
};

struct EquivalenceReport {
  double damping = 0.0;
  std::vector<EquivalencePoint> points;
  SummaryStats ratio;
  SummaryStats cosine;
  std::size_t failures = 0;
};

// For each sample gradient g compares g with (H + damping·I)⁻¹ g. Failed solves
// are kept in `points` with their error and left out of the statistics.
EquivalenceReport scaling_equivalence_experiment(const HvpContext& ctx, const std::vector<Tensor>& gradients,
                                                 const CgConfig& config = {}, std::size_t workers = 1);
EquivalenceReport scaling_equivalence_experiment(const HvpContext& ctx, const std::vector<LabeledExample>& sample,
                                                 const CgConfig& config = {}, std::size_t workers = 1);

// CSV: point_index,ratio,cosine,residual,iterations,status then "# " stats footer.
void write_equivalence_csv(const EquivalenceReport& report, const std::filesystem::path& path,
                           const std::string& trailer = "");

// Newton-CG minimizer of the regularized mean risk over `data`, for convex
// models such as softmax regression. Starts from the given model.
Model fit_convex(const Model& init, const std::vector<LabeledExample>& data, double l2_reg,
                 std::size_t max_newton = 50, double step_tol = 1e-12);

double pearson(std::span<const double> a, std::span<const double> b);

struct FidelityReport {
  std::vector<double> predicted;  // −I(x*, x') / |data|
  std::vector<double> actual;     // L(x'; θ without x*) − L(x'; θ)
  double pearson = 0.0;
};

// Predicted leave-one-out loss changes at `test` against exact refits with
// each training point removed.
FidelityReport influence_fidelity_experiment(const Model& init, const std::vector<LabeledExample>& data,
                                             const LabeledExample& test, double l2_reg, std::size_t workers = 1);

void write_fidelity_csv(const FidelityReport& report, const std::filesystem::path& path,
                        const std::string& trailer = "");

}  // namespace gradsim
