#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pddforge/rng.hpp"
#include "pddforge/teacher.hpp"
#include "pddforge/tensor.hpp"
#include "pddforge/wavenet.hpp"

namespace pddforge {

struct StudentSpec {
  int64_t n_flows = 6;
  ResidualStackSpec flow_stack{10, 1, 64, 64, 3, true, 80};
  UpsamplerSpec ups{{2, 2, 2, 3, 5}, 80};
  int sample_rate = 24000;
  int frame_ms = 25, shift_ms = 5;
  double log_sigma_floor = -7.0;

  int64_t hop() const { return ups.hop(); }
  void validate() const;

  static StudentSpec paper();
  static StudentSpec desk();
};

// Stack of affine flows z -> x̂, each parameterized by a causal WaveNet over
// its own input, composing to a single per-timestep Gaussian transform.
class Student {
 public:
  Student(StudentSpec spec, uint64_t init_seed);

  Tensor upsample(const Tensor& mel) const;
  void copy_upsampler_from(const Teacher& teacher);

  struct FlowOutput {
    Tensor mu, log_sigma;  // [T] each; parameters of one affine stage
  };
  // One flow applied to z_in; parameters depend on z_in strictly before t.
  FlowOutput flow_forward(int64_t flow_index, const Tensor& z_in, const Tensor& cond) const;

  struct Transform {
    Tensor xhat;            // mu_q + sigma_q * z
    Tensor mu_q;            // [T]
    Tensor log_sigma_q;     // [T]
    Tensor sequential_out;  // z after applying the flows one by one
  };
  // Applies all flows in parallel over time and composes the affine
  // parameters so that xhat = mu_q + sigma_q * z holds by construction.
  Transform transform(const Tensor& z, const Tensor& cond) const;

  struct Synthesis {
    std::vector<double> x;       // clamped to [-1, 1]
    int64_t network_passes = 0;  // flow network evaluations; independent of T
  };
  Synthesis synthesize(const std::vector<double>& cond, int64_t t_len, Rng& rng) const;

  const StudentSpec& spec() const { return spec_; }
  ParamList& params() { return params_; }
  const ParamList& params() const { return params_; }

  void save(const std::string& path) const;
  static Student load(const std::string& path);

  mutable int64_t flow_pass_count = 0;

 private:
  struct Flow {
    std::unique_ptr<ResidualStack> stack;
    Tensor head_a_w, head_a_b, head_b_w, head_b_b;
  };

  StudentSpec spec_;
  std::unique_ptr<Upsampler> upsampler_;
  std::vector<Flow> flows_;
  ParamList params_;
};

}  // namespace pddforge
