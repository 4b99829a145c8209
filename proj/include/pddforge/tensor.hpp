#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pddforge/common.hpp"

namespace pddforge {

namespace detail {

struct Node {
  std::vector<int64_t> shape;
  std::vector<double> value;
  std::vector<double> grad;  // empty until first needed; same length as value after
  bool requires_grad = false;
  bool leaf = true;
  const char* op = "leaf";
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this->grad and accumulates into parents' grad buffers.
  std::function<void(Node&)> backward_fn;
  int backward_visits = 0;  // incremented once per backward() traversal

  int64_t numel() const { return static_cast<int64_t>(value.size()); }
  void ensure_grad() {
    if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
  }
};

}  // namespace detail

// Dense 64-bit float array participating in a dynamically built reverse-mode
// graph. Handles share the underlying node; values are treated as immutable
// once a node has been consumed by another op (leaves may be updated between
// steps by the optimizer).
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<int64_t> shape);
  static Tensor full(std::vector<int64_t> shape, double v);
  static Tensor from(std::vector<int64_t> shape, std::vector<double> data);
  static Tensor scalar(double v);
  // Leaf with requires_grad set; participates in backward accumulation.
  static Tensor parameter(std::vector<int64_t> shape, std::vector<double> data);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int64_t>& shape() const { return node_->shape; }
  int64_t numel() const { return node_->numel(); }
  double item() const;

  const std::vector<double>& values() const { return node_->value; }
  std::vector<double>& mutable_values() { return node_->value; }

  bool requires_grad() const { return node_ && node_->requires_grad; }
  void set_requires_grad(bool rg);
  // Gradient buffer; zeros if backward has not touched this tensor yet.
  const std::vector<double>& grad() const;
  void zero_grad();

  // Reverse-mode sweep from a scalar. Each reachable node's backward runs
  // exactly once in reverse topological order; leaf gradients accumulate
  // across repeated calls, intermediate gradients are reset per sweep.
  void backward() const;

  int backward_visits() const { return node_->backward_visits; }
  const char* op_name() const { return node_->op; }

  std::shared_ptr<detail::Node> node_;

  static Tensor wrap(std::shared_ptr<detail::Node> n) {
    Tensor t;
    t.node_ = std::move(n);
    return t;
  }
};

// While in scope, newly built ops are constants: no parents are recorded and
// no gradients flow. Used for frozen-model evaluation and synthesis.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;
  static bool active();

 private:
  bool prev_;
};

struct NamedParam {
  std::string name;
  Tensor tensor;
};
using ParamList = std::vector<NamedParam>;

void zero_grads(ParamList& params);

}  // namespace pddforge
