#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradsim/autodiff.hpp"
#include "gradsim/tensor.hpp"

namespace gradsim {

struct InputDomain {
  enum class Kind { Continuous, Binary };
  Kind kind = Kind::Continuous;
  double min = 0.0;
  double max = 1.0;

  static InputDomain continuous(double lo, double hi) { return {Kind::Continuous, lo, hi}; }
  static InputDomain binary() { return {Kind::Binary, 0.0, 1.0}; }
  bool is_binary() const { return kind == Kind::Binary; }
  bool contains(const Tensor& x) const;
  friend bool operator==(const InputDomain&, const InputDomain&) = default;
};

struct LabeledExample {
  Tensor x;
  std::size_t y = 0;
};

enum class LayerKind { Conv, Dense, Relu, Dropout, Flatten };

struct Layer {
  LayerKind kind = LayerKind::Relu;
  std::size_t units = 0;  // output channels (conv) or features (dense)
  std::size_t kernel = 0;
  std::size_t stride = 1;
  std::size_t pad = 0;
  double rate = 0.0;  // dropout probability
};

// Network layout. Text form, e.g.
//   "input 1x28x28; domain continuous 0 1; conv 8 5 1 0; relu; flatten; dense 10"
struct Architecture {
  Shape input_shape;
  InputDomain domain;
  std::vector<Layer> layers;

  static Architecture parse(std::string_view descriptor);
  std::string descriptor() const;
  std::size_t num_classes() const;
  std::vector<std::pair<std::string, Shape>> parameter_shapes() const;
};

// Desk-scale MNIST CNN and the binary-feature fully connected net.
Architecture mnist_cnn_architecture();
Architecture binary_mlp_architecture(std::size_t n_features);

struct NamedTensor {
  std::string name;
  Tensor value;
};

class Model {
 public:
  Model(Architecture arch, std::uint64_t init_seed);
  Model(Architecture arch, std::vector<NamedTensor> params);

  const Architecture& architecture() const { return arch_; }
  const InputDomain& domain() const { return arch_.domain; }
  const Shape& input_shape() const { return arch_.input_shape; }
  std::size_t num_classes() const { return arch_.num_classes(); }
  std::size_t num_parameters() const;
  const std::vector<NamedTensor>& parameters() const { return params_; }

  // θ concatenated in parameter order.
  Tensor flatten() const;
  Model with_parameters(const Tensor& flat) const;
  // FNV-1a over the bytes of flatten().
  std::uint64_t checksum() const;

  std::vector<ad::Var> parameter_vars(bool differentiable) const;

  // Logits [B,K] for a batch x [B, input_shape...]. Dropout is applied only
  // when a mask generator is given.
  ad::Var logits(std::span<const ad::Var> params, const ad::Var& x, std::mt19937_64* dropout_rng = nullptr) const;

 private:
  Architecture arch_;
  std::vector<NamedTensor> params_;
};

// Stacks examples into a [B, input_shape...] batch tensor.
Tensor make_batch(const Shape& input_shape, std::span<const Tensor* const> xs);
ad::Var input_var(const Model& model, const Tensor& x, bool differentiable);

// Evaluation-mode accessors (dropout disabled).
Tensor logits(const Model& model, const Tensor& x);
Tensor predict_proba(const Model& model, const Tensor& x);
std::size_t predict(const Model& model, const Tensor& x);
double loss(const Model& model, const Tensor& x, std::size_t y);
Tensor grad_params(const Model& model, const Tensor& x, std::size_t y);
Tensor grad_input(const Model& model, const Tensor& x, std::size_t y);
double accuracy(const Model& model, std::span<const LabeledExample> examples);

// Cross-entropy of a single example as a graph node over the given parameter
// vars; x is [input_shape...].
ad::Var example_loss(const Model& model, std::span<const ad::Var> params, const ad::Var& x, std::size_t y);

struct TrainConfig {
  std::size_t epochs = 10;
  std::size_t batch_size = 50;
  double learning_rate = 0.05;
  double lr_decay = 1.0;  // multiplies the learning rate after every epoch
  double momentum = 0.9;
  double weight_decay = 0.0;
  std::uint64_t seed = 1;
  bool dropout = true;
};

struct TrainHistory {
  std::vector<double> loss;
  std::vector<double> accuracy;
};

struct TrainResult {
  Model model;
  TrainHistory history;
};

// Mini-batch SGD with momentum on mean cross-entropy + weight_decay/2 ||θ||².
TrainResult train(Model model, std::span<const LabeledExample> train_set, const TrainConfig& config);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace gradsim
