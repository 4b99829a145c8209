#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pddforge/ops.hpp"
#include "pddforge/rng.hpp"
#include "pddforge/tensor.hpp"

namespace pddforge {

struct ResidualStackSpec {
  int64_t n_layers = 24;
  int64_t n_cycles = 4;
  int64_t residual_channels = 128;
  int64_t skip_channels = 128;
  int64_t filter_size = 3;
  bool causal = true;
  int64_t cond_channels = 80;

  // Layer i dilates by 2^(i mod (n_layers / n_cycles)).
  std::vector<int64_t> dilations() const;
  int64_t receptive_field() const;  // 1 + (filter-1) * sum(dilations)
  void validate() const;
};

// Gated dilated residual convolution stack with per-layer 1x1-projected
// conditioning and summed skip outputs.
class ResidualStack {
 public:
  ResidualStack(ResidualStackSpec spec, const std::string& prefix, Rng& rng);

  // input [1,T], cond [cond_channels,T] -> skip sum [skip_channels,T]
  Tensor forward(const Tensor& input, const Tensor& cond) const;

  const ResidualStackSpec& spec() const { return spec_; }
  const ParamList& params() const { return params_; }
  ParamList& params() { return params_; }

  // Single-timestep evaluation against ring buffers of past activations; the
  // autoregressive sampling loop advances this one sample at a time.
  struct StepState {
    std::vector<std::vector<double>> ring;  // per layer, [ring_len * channels]
    std::vector<int64_t> ring_len;
    int64_t t = 0;
    std::vector<double> h, f, g, gated;  // scratch
  };
  StepState make_step_state() const;
  // cond_col: cond_channels values for this timestep; skip_out accumulates
  // skip_channels values (caller zeroes).
  void step(StepState& state, double input_sample, const double* cond_col,
            double* skip_out) const;

 private:
  const Tensor& p(size_t idx) const { return params_[idx].tensor; }

  ResidualStackSpec spec_;
  std::vector<int64_t> dils_;
  ParamList params_;
  // Parameter layout: input projection, then 12 tensors per layer.
  size_t layer_base(int64_t l) const { return 2 + static_cast<size_t>(l) * 12; }
};

struct UpsamplerSpec {
  std::vector<int64_t> scales;  // per-stage repeat factors; product = hop
  int64_t n_mels = 80;

  int64_t hop() const;
  void validate() const;
};

// Nearest-neighbor time upsampling interleaved with (2s+1)^2 single-channel
// 2-D interpolation convolutions over the time x band image. Kernels start
// as identity deltas, so a fresh upsampler is exact repetition.
class Upsampler {
 public:
  Upsampler(UpsamplerSpec spec, const std::string& prefix);

  // mel [n_frames, n_mels] -> conditioning [n_mels, n_frames*hop]
  Tensor forward(const Tensor& mel) const;

  const UpsamplerSpec& spec() const { return spec_; }
  const ParamList& params() const { return params_; }
  ParamList& params() { return params_; }

 private:
  UpsamplerSpec spec_;
  ParamList params_;
};

// Centered uniform with bound 1/sqrt(fan_in).
Tensor init_conv_weight(std::vector<int64_t> dims, int64_t fan_in, Rng& rng);

}  // namespace pddforge
