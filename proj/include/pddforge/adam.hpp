#pragma once

#include <cstdint>
#include <vector>

#include "pddforge/tensor.hpp"

namespace pddforge {

// Adam with bias correction. Moment buffers are aligned index-for-index with
// the parameter list they were initialized from.
struct AdamState {
  uint64_t step_count = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<std::vector<double>> m, v;

  void init(const ParamList& params);
  bool initialized() const { return !m.empty(); }
};

// One update from the gradients currently held by `params`. If any gradient
// is non-finite the whole update is skipped, the incident is logged with the
// state's step index, and false is returned (state does not advance).
bool adam_step(ParamList& params, AdamState& state, double lr);

// initial_lr * 0.5^floor(step / halve_every)
double step_lr(double initial_lr, uint64_t step, uint64_t halve_every);

}  // namespace pddforge
