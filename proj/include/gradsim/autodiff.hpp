#pragma once

// Define-by-run reverse-mode automatic differentiation over Tensor values.
//
// Every op records a node holding its value, its input handles and a backward
// rule. Backward rules are themselves written in terms of recorded ops, so
// calling grad(..., create_graph = true) yields gradients that can be
// differentiated again (Hessian-vector products, input-gradients of
// parameter-gradient functionals). ReLU's second derivative is taken as 0.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gradsim/tensor.hpp"

namespace gradsim::ad {

struct Node;

class Var {
 public:
  Var() = default;
  explicit Var(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  std::size_t size() const { return value().size(); }
  double item() const { return value().item(); }
  bool requires_grad() const;
  bool defined() const { return node_ != nullptr; }
  Node* node() const { return node_.get(); }

 private:
  std::shared_ptr<Node> node_;
};

// Receives the op inputs, the gradient flowing into the op output and a mask
// of which inputs need a gradient; returns one entry per input (undefined
// entries are allowed where the mask is false).
using BackwardFn =
    std::function<std::vector<Var>(const std::vector<Var>& inputs, const Var& grad_out,
                                   const std::vector<bool>& needs)>;

struct Node {
  Tensor value;
  std::vector<Var> inputs;
  BackwardFn backward;
  bool requires_grad = false;
  const char* op = "leaf";
};

// Records an op result. Inputs and backward rule are dropped when no input
// requires a gradient or grad mode is disabled.
Var record(const char* op, Tensor value, std::vector<Var> inputs, BackwardFn backward);

Var constant(Tensor value);
Var variable(Tensor value);

bool grad_enabled();

class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

// d(root)/d(target) for each target. root must hold exactly one value.
// Targets not reachable from root receive zero gradients.
std::vector<Var> grad(const Var& root, std::span<const Var> targets, bool create_graph = false);
std::vector<Tensor> gradients(const Var& root, std::span<const Var> targets);

// Elementwise (identical shapes).
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var div(const Var& a, const Var& b);
Var neg(const Var& a);
Var scale(const Var& a, double k);
Var add_scalar(const Var& a, double k);
Var sqrt(const Var& a);
Var tanh(const Var& a);
Var relu(const Var& a);

// x scaled by the single value held in s.
Var mul_scalar(const Var& x, const Var& s);

// Reductions and broadcasts.
Var sum(const Var& a);
Var dot(const Var& a, const Var& b);
Var expand(const Var& s, const Shape& shape);
Var row_sum(const Var& z);                          // [B,K] -> [B]
Var broadcast_cols(const Var& v, std::size_t k);    // [B] -> [B,K]
Var sum_rows(const Var& y);                         // [B,N] -> [N]
Var broadcast_rows(const Var& b, std::size_t rows); // [N] -> [B,N]
Var add_row_bias(const Var& y, const Var& b);       // [B,N] + [N]

Var select(const Var& x, std::size_t index);  // flat element -> scalar
Var scatter(const Var& s, std::size_t index, const Shape& shape);
Var reshape(const Var& x, const Shape& shape);

Var matmul(const Var& a, const Var& b);
Var transpose(const Var& a);

struct ConvParams {
  std::size_t stride = 1;
  std::size_t pad = 0;
};

Shape conv2d_output_shape(const Shape& x, const Shape& w, ConvParams p);
// x [B,C,H,W], w [O,C,KH,KW] -> [B,O,OH,OW]
Var conv2d(const Var& x, const Var& w, ConvParams p);
Var conv2d_input_grad(const Var& g, const Var& w, const Shape& x_shape, ConvParams p);
Var conv2d_weight_grad(const Var& x, const Var& g, const Shape& w_shape, ConvParams p);
Var add_channel_bias(const Var& y, const Var& b);  // [B,C,H,W] + [C]
Var sum_channels(const Var& y);                    // [B,C,H,W] -> [C]
Var broadcast_channels(const Var& b, const Shape& shape);

// Row-wise softmax of [B,K] logits.
Var softmax(const Var& z);
// Mean over rows of -log(max(softmax(z)[y], floor)); rows at the floor
// contribute a constant.
Var softmax_cross_entropy(const Var& z, std::span<const std::size_t> labels, double floor = 1e-12);

inline Var operator+(const Var& a, const Var& b) { return add(a, b); }
inline Var operator-(const Var& a, const Var& b) { return sub(a, b); }
inline Var operator*(const Var& a, const Var& b) { return mul(a, b); }
inline Var operator*(double k, const Var& a) { return scale(a, k); }
inline Var operator-(const Var& a) { return neg(a); }

}  // namespace gradsim::ad
