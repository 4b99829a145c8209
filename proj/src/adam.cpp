#include "pddforge/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "pddforge/kernels.hpp"
#include "pddforge/log.hpp"

namespace pddforge {

void AdamState::init(const ParamList& params) {
  step_count = 0;
  m.clear();
  v.clear();
  for (const auto& p : params) {
    m.emplace_back(p.tensor.numel(), 0.0);
    v.emplace_back(p.tensor.numel(), 0.0);
  }
}

bool adam_step(ParamList& params, AdamState& state, double lr) {
  if (!(lr > 0.0)) throw std::invalid_argument("adam: lr must be positive");
  if (state.m.size() != params.size()) throw std::invalid_argument("adam: state/params mismatch");
  for (size_t i = 0; i < params.size(); ++i) {
    const auto& g = params[i].tensor.grad();
    if (g.size() != state.m[i].size())
      throw std::invalid_argument("adam: gradient shape mismatch for " + params[i].name);
    for (double gv : g)
      if (!std::isfinite(gv)) {
        logging::error("adam: non-finite gradient in " + params[i].name + " at step " +
                       std::to_string(state.step_count) + "; update skipped");
        return false;
      }
  }
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
  for (size_t i = 0; i < params.size(); ++i) {
    auto& w = params[i].tensor.mutable_values();
    const auto& g = params[i].tensor.grad();
    auto& mi = state.m[i];
    auto& vi = state.v[i];
    const double b1 = state.beta1, b2 = state.beta2, eps = state.eps;
    kernels::for_each_index(static_cast<int64_t>(w.size()), [&](int64_t j) {
      mi[j] = b1 * mi[j] + (1.0 - b1) * g[j];
      vi[j] = b2 * vi[j] + (1.0 - b2) * g[j] * g[j];
      const double mhat = mi[j] / bc1;
      const double vhat = vi[j] / bc2;
      w[j] -= lr * mhat / (std::sqrt(vhat) + eps);
    });
  }
  return true;
}

double step_lr(double initial_lr, uint64_t step, uint64_t halve_every) {
  if (!(initial_lr > 0.0) || halve_every == 0)
    throw std::invalid_argument("step_lr: need initial_lr > 0 and halve_every > 0");
  return initial_lr * std::pow(0.5, static_cast<double>(step / halve_every));
}

}  // namespace pddforge
