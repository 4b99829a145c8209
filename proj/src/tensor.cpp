#include "pddforge/tensor.hpp"

#include <stdexcept>
#include <unordered_set>

namespace pddforge {

namespace {
thread_local bool t_no_grad = false;
}

NoGradGuard::NoGradGuard() : prev_(t_no_grad) { t_no_grad = true; }
NoGradGuard::~NoGradGuard() { t_no_grad = prev_; }
bool NoGradGuard::active() { return t_no_grad; }

Tensor Tensor::zeros(std::vector<int64_t> shape) {
  return full(std::move(shape), 0.0);
}

Tensor Tensor::full(std::vector<int64_t> shape, double v) {
  auto n = std::make_shared<detail::Node>();
  n->value.assign(static_cast<size_t>(numel_of(shape)), v);
  n->shape = std::move(shape);
  return wrap(std::move(n));
}

Tensor Tensor::from(std::vector<int64_t> shape, std::vector<double> data) {
  if (numel_of(shape) != static_cast<int64_t>(data.size()))
    throw std::invalid_argument("tensor: data length " + std::to_string(data.size()) +
                                " does not match shape " + shape_str(shape));
  auto n = std::make_shared<detail::Node>();
  n->shape = std::move(shape);
  n->value = std::move(data);
  return wrap(std::move(n));
}

Tensor Tensor::scalar(double v) { return from({1}, {v}); }

Tensor Tensor::parameter(std::vector<int64_t> shape, std::vector<double> data) {
  Tensor t = from(std::move(shape), std::move(data));
  t.node_->requires_grad = true;
  return t;
}

double Tensor::item() const {
  if (numel() != 1) throw std::invalid_argument("item: tensor is not scalar, shape " + shape_str(shape()));
  return node_->value[0];
}

void Tensor::set_requires_grad(bool rg) {
  if (!node_->leaf) throw std::invalid_argument("requires_grad can only be toggled on leaves");
  node_->requires_grad = rg;
}

const std::vector<double>& Tensor::grad() const {
  node_->ensure_grad();
  return node_->grad;
}

void Tensor::zero_grad() {
  node_->grad.assign(node_->value.size(), 0.0);
}

void Tensor::backward() const {
  if (numel() != 1) throw std::invalid_argument("backward: loss must be scalar, shape " + shape_str(shape()));
  // Iterative post-order DFS; every reachable node appears exactly once.
  std::vector<detail::Node*> order;
  std::unordered_set<detail::Node*> seen;
  std::vector<std::pair<detail::Node*, size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  seen.insert(node_.get());
  while (!stack.empty()) {
    auto& [nd, idx] = stack.back();
    if (idx < nd->parents.size()) {
      detail::Node* p = nd->parents[idx++].get();
      if (p->requires_grad && seen.insert(p).second) stack.emplace_back(p, 0);
    } else {
      order.push_back(nd);
      stack.pop_back();
    }
  }
  // Intermediate grads are per-sweep scratch; leaf grads persist/accumulate.
  for (detail::Node* nd : order) {
    if (!nd->leaf) nd->grad.assign(nd->value.size(), 0.0);
    else nd->ensure_grad();
  }
  node_->ensure_grad();
  node_->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    detail::Node* nd = *it;
    nd->backward_visits++;
    if (nd->backward_fn) {
      for (auto& p : nd->parents)
        if (p->requires_grad) p->ensure_grad();
      nd->backward_fn(*nd);
    }
  }
}

void zero_grads(ParamList& params) {
  for (auto& p : params) p.tensor.zero_grad();
}

}  // namespace pddforge
