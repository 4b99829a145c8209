#include "pddforge/wavenet.hpp"

#include <cmath>
#include <stdexcept>

namespace pddforge {

std::vector<int64_t> ResidualStackSpec::dilations() const {
  const int64_t cycle = n_layers / n_cycles;
  std::vector<int64_t> d(n_layers);
  for (int64_t i = 0; i < n_layers; ++i) d[i] = int64_t{1} << (i % cycle);
  return d;
}

int64_t ResidualStackSpec::receptive_field() const {
  int64_t sum = 0;
  for (int64_t d : dilations()) sum += d;
  return 1 + (filter_size - 1) * sum;
}

void ResidualStackSpec::validate() const {
  if (n_layers < 1 || n_cycles < 1 || n_layers % n_cycles != 0)
    throw std::invalid_argument("residual stack: n_layers must be a positive multiple of n_cycles");
  if (filter_size < 1 || filter_size % 2 == 0)
    throw std::invalid_argument("residual stack: filter size must be odd");
  if (residual_channels < 1 || skip_channels < 1 || cond_channels < 1)
    throw std::invalid_argument("residual stack: channel counts must be positive");
}

Tensor init_conv_weight(std::vector<int64_t> dims, int64_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::vector<double> data(numel_of(dims));
  for (auto& v : data) v = rng.uniform(-bound, bound);
  return Tensor::parameter(std::move(dims), std::move(data));
}

ResidualStack::ResidualStack(ResidualStackSpec spec, const std::string& prefix, Rng& rng)
    : spec_(spec), dils_(spec.dilations()) {
  spec_.validate();
  const int64_t r = spec_.residual_channels, s = spec_.skip_channels, c = spec_.cond_channels;
  const int64_t k = spec_.filter_size;
  auto zeros1 = [](int64_t n) { return Tensor::parameter({n}, std::vector<double>(n, 0.0)); };
  params_.push_back({prefix + "in.w", init_conv_weight({r, 1, 1}, 1, rng)});
  params_.push_back({prefix + "in.b", zeros1(r)});
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    const std::string lp = prefix + "l" + std::to_string(l) + ".";
    params_.push_back({lp + "filter.w", init_conv_weight({r, r, k}, r * k, rng)});
    params_.push_back({lp + "filter.b", zeros1(r)});
    params_.push_back({lp + "gate.w", init_conv_weight({r, r, k}, r * k, rng)});
    params_.push_back({lp + "gate.b", zeros1(r)});
    params_.push_back({lp + "cond_filter.w", init_conv_weight({r, c, 1}, c, rng)});
    params_.push_back({lp + "cond_filter.b", zeros1(r)});
    params_.push_back({lp + "cond_gate.w", init_conv_weight({r, c, 1}, c, rng)});
    params_.push_back({lp + "cond_gate.b", zeros1(r)});
    params_.push_back({lp + "res.w", init_conv_weight({r, r, 1}, r, rng)});
    params_.push_back({lp + "res.b", zeros1(r)});
    params_.push_back({lp + "skip.w", init_conv_weight({s, r, 1}, r, rng)});
    params_.push_back({lp + "skip.b", zeros1(s)});
  }
}

Tensor ResidualStack::forward(const Tensor& input, const Tensor& cond) const {
  if (input.shape().size() != 2 || input.shape()[0] != 1)
    throw std::invalid_argument("residual stack: input must be [1,T], got " +
                                shape_str(input.shape()));
  if (cond.shape().size() != 2 || cond.shape()[0] != spec_.cond_channels ||
      cond.shape()[1] != input.shape()[1])
    throw std::invalid_argument("residual stack: length mismatch between waveform " +
                                shape_str(input.shape()) + " and condition " +
                                shape_str(cond.shape()));
  Tensor h = conv1d(input, p(0), p(1), {true, 1, 1});
  Tensor skip_sum;
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    const size_t b = layer_base(l);
    const Conv1dOpts dil{spec_.causal, dils_[l], 1};
    Tensor f = conv1d(h, p(b + 0), p(b + 1), dil) + conv1d(cond, p(b + 4), p(b + 5), {true, 1, 1});
    Tensor g = conv1d(h, p(b + 2), p(b + 3), dil) + conv1d(cond, p(b + 6), p(b + 7), {true, 1, 1});
    Tensor gated = tanh(f) * sigmoid(g);
    Tensor skip = conv1d(gated, p(b + 10), p(b + 11), {true, 1, 1});
    skip_sum = l == 0 ? skip : skip_sum + skip;
    h = h + conv1d(gated, p(b + 8), p(b + 9), {true, 1, 1});
  }
  return skip_sum;
}

ResidualStack::StepState ResidualStack::make_step_state() const {
  StepState st;
  st.ring_len.resize(spec_.n_layers);
  st.ring.resize(spec_.n_layers);
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    st.ring_len[l] = (spec_.filter_size - 1) * dils_[l] + 1;
    st.ring[l].assign(st.ring_len[l] * spec_.residual_channels, 0.0);
  }
  st.h.resize(spec_.residual_channels);
  st.f.resize(spec_.residual_channels);
  st.g.resize(spec_.residual_channels);
  st.gated.resize(spec_.residual_channels);
  return st;
}

void ResidualStack::step(StepState& st, double input_sample, const double* cond_col,
                         double* skip_out) const {
  const int64_t r = spec_.residual_channels, s = spec_.skip_channels, c = spec_.cond_channels;
  const int64_t k = spec_.filter_size;
  {
    const double* w = p(0).values().data();
    const double* b = p(1).values().data();
    for (int64_t i = 0; i < r; ++i) st.h[i] = w[i] * input_sample + b[i];
  }
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    const size_t base = layer_base(l);
    const int64_t d = dils_[l];
    const int64_t len = st.ring_len[l];
    double* ring = st.ring[l].data();
    const int64_t slot = st.t % len;
    for (int64_t i = 0; i < r; ++i) ring[slot * r + i] = st.h[i];

    const double* wf = p(base + 0).values().data();
    const double* bf = p(base + 1).values().data();
    const double* wg = p(base + 2).values().data();
    const double* bg = p(base + 3).values().data();
    const double* cfw = p(base + 4).values().data();
    const double* cfb = p(base + 5).values().data();
    const double* cgw = p(base + 6).values().data();
    const double* cgb = p(base + 7).values().data();
    for (int64_t i = 0; i < r; ++i) {
      st.f[i] = bf[i];
      st.g[i] = bg[i];
    }
    for (int64_t kk = 0; kk < k; ++kk) {
      const int64_t tt = st.t - (k - 1 - kk) * d;
      if (tt < 0) continue;  // causal zero history
      const double* col = ring + (tt % len) * r;
      for (int64_t i = 0; i < r; ++i) {
        const double* wfr = wf + (i * r) * k;
        const double* wgr = wg + (i * r) * k;
        double af = 0.0, ag = 0.0;
        for (int64_t j = 0; j < r; ++j) {
          af += wfr[j * k + kk] * col[j];
          ag += wgr[j * k + kk] * col[j];
        }
        st.f[i] += af;
        st.g[i] += ag;
      }
    }
    for (int64_t i = 0; i < r; ++i) {
      double cf = cfb[i], cg = cgb[i];
      const double* cfr = cfw + i * c;
      const double* cgr = cgw + i * c;
      for (int64_t j = 0; j < c; ++j) {
        cf += cfr[j] * cond_col[j];
        cg += cgr[j] * cond_col[j];
      }
      st.gated[i] = std::tanh(st.f[i] + cf) * (1.0 / (1.0 + std::exp(-(st.g[i] + cg))));
    }
    const double* rw = p(base + 8).values().data();
    const double* rb = p(base + 9).values().data();
    const double* sw = p(base + 10).values().data();
    const double* sb = p(base + 11).values().data();
    for (int64_t i = 0; i < s; ++i) {
      double acc = sb[i];
      const double* swr = sw + i * r;
      for (int64_t j = 0; j < r; ++j) acc += swr[j] * st.gated[j];
      skip_out[i] += acc;
    }
    for (int64_t i = 0; i < r; ++i) {
      double acc = rb[i];
      const double* rwr = rw + i * r;
      for (int64_t j = 0; j < r; ++j) acc += rwr[j] * st.gated[j];
      st.h[i] += acc;
    }
  }
  st.t += 1;
}

int64_t UpsamplerSpec::hop() const {
  int64_t h = 1;
  for (int64_t s : scales) h *= s;
  return h;
}

void UpsamplerSpec::validate() const {
  if (scales.empty()) throw std::invalid_argument("upsampler: no scales");
  for (int64_t s : scales)
    if (s < 1) throw std::invalid_argument("upsampler: scales must be positive");
  if (n_mels < 1) throw std::invalid_argument("upsampler: n_mels must be positive");
}

Upsampler::Upsampler(UpsamplerSpec spec, const std::string& prefix) : spec_(std::move(spec)) {
  spec_.validate();
  for (size_t i = 0; i < spec_.scales.size(); ++i) {
    const int64_t k = 2 * spec_.scales[i] + 1;
    std::vector<double> w(k * k, 0.0);
    w[(k / 2) * k + (k / 2)] = 1.0;  // identity delta: starts as pure repetition
    params_.push_back({prefix + "stage" + std::to_string(i) + ".w",
                       Tensor::parameter({1, 1, k, k}, std::move(w))});
    params_.push_back({prefix + "stage" + std::to_string(i) + ".b",
                       Tensor::parameter({1}, {0.0})});
  }
}

Tensor Upsampler::forward(const Tensor& mel) const {
  if (mel.shape().size() != 2 || mel.shape()[1] != spec_.n_mels)
    throw std::invalid_argument("upsampler: expected [n_frames," + std::to_string(spec_.n_mels) +
                                "], got " + shape_str(mel.shape()));
  Tensor x = mel;
  for (size_t i = 0; i < spec_.scales.size(); ++i) {
    x = repeat_rows(x, spec_.scales[i]);
    Tensor img = reshape(x, {1, x.shape()[0], x.shape()[1]});
    img = conv2d(img, params_[2 * i].tensor, params_[2 * i + 1].tensor);
    x = reshape(img, {x.shape()[0], x.shape()[1]});
  }
  return transpose2d(x);
}

}  // namespace pddforge
