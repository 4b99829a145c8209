#pragma once

#include <string>
#include <vector>

#include "pddforge/rng.hpp"
#include "pddforge/tensor.hpp"

namespace pddforge {

struct DiscriminatorSpec {
  int64_t n_layers = 10;
  int64_t channels = 64;
  int64_t filter_size = 3;
  // Dilation 1 on the first and last layers, linearly increasing in between.
  std::vector<int64_t> dilations{1, 1, 2, 3, 4, 5, 6, 7, 8, 1};
  double leaky_alpha = 0.2;

  int64_t receptive_field() const;  // 1 + (filter-1) * sum(dilations)
  void validate() const;

  static DiscriminatorSpec paper();
  static DiscriminatorSpec desk();
};

// Unconditioned stack of non-causal dilated 1-D convolutions with leaky ReLU
// between layers; the last layer maps to one raw score per timestep.
class Discriminator {
 public:
  Discriminator(DiscriminatorSpec spec, uint64_t init_seed);

  // x [T] -> scores [T]
  Tensor scores(const Tensor& x) const;

  const DiscriminatorSpec& spec() const { return spec_; }
  ParamList& params() { return params_; }
  const ParamList& params() const { return params_; }

  void save(const std::string& path) const;
  static Discriminator load(const std::string& path);

  mutable int64_t eval_count = 0;

 private:
  DiscriminatorSpec spec_;
  ParamList params_;
};

// Arithmetic mean of per-timestep scores as a [1] tensor.
Tensor score_mean(const Tensor& scores);

}  // namespace pddforge
