#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pddforge/rng.hpp"
#include "pddforge/tensor.hpp"
#include "pddforge/wavenet.hpp"

namespace pddforge {

struct TeacherSpec {
  ResidualStackSpec stack{24, 4, 128, 128, 3, true, 80};
  UpsamplerSpec ups{{2, 2, 2, 3, 5}, 80};
  int sample_rate = 24000;
  int frame_ms = 25, shift_ms = 5;
  double log_sigma_floor = -7.0;

  int64_t hop() const { return ups.hop(); }
  void validate() const;

  static TeacherSpec paper();
  static TeacherSpec desk();
};

struct TeacherOutput {
  Tensor mu;         // [T]
  Tensor log_sigma;  // [T], clamped at the floor
};

// Gaussian autoregressive density model over waveform samples: a causal
// gated stack over the one-step-delayed signal with upsampled mel
// conditioning, and a (mu, log sigma) head.
class Teacher {
 public:
  Teacher(TeacherSpec spec, uint64_t init_seed);

  // mel [n_frames, n_mels] -> conditioning [n_mels, n_frames*hop]
  Tensor upsample(const Tensor& mel) const;

  // x [T], cond [n_mels, T]. Output at t depends only on x_<t.
  TeacherOutput forward(const Tensor& x, const Tensor& cond) const;

  // Mean over t of 0.5*log(2*pi) + log sigma + (x - mu)^2 / (2 sigma^2).
  Tensor nll(const TeacherOutput& out, const Tensor& x) const;

  struct SampleResult {
    std::vector<double> x;          // clamped to [-1, 1]
    std::vector<double> mu;
    std::vector<double> log_sigma;
    int64_t loop_iterations = 0;
  };
  // Sequential draw x_t ~ N(mu_t, (temperature * sigma_t)^2), one network
  // step per sample. cond is [n_mels, T] row-major.
  SampleResult sample(const std::vector<double>& cond, int64_t t_len, Rng& rng,
                      double temperature = 1.0) const;

  const TeacherSpec& spec() const { return spec_; }
  ParamList& params() { return params_; }
  const ParamList& params() const { return params_; }
  void set_trainable(bool trainable);

  void save(const std::string& path) const;
  static Teacher load(const std::string& path);

  mutable int64_t eval_count = 0;  // density evaluations, for the footnote checks

 private:
  TeacherSpec spec_;
  std::unique_ptr<Upsampler> upsampler_;
  std::unique_ptr<ResidualStack> stack_;
  Tensor head_a_w_, head_a_b_, head_b_w_, head_b_b_;
  ParamList params_;
};

}  // namespace pddforge
