#include "pddforge/teacher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pddforge/checkpoint.hpp"
#include "pddforge/ops.hpp"

namespace pddforge {

void TeacherSpec::validate() const {
  stack.validate();
  ups.validate();
  if (stack.cond_channels != ups.n_mels)
    throw std::invalid_argument("teacher: stack conditioning channels must equal mel bands");
  if (!stack.causal) throw std::invalid_argument("teacher: stack must be causal");
  const int64_t hop_samples = static_cast<int64_t>(sample_rate) * shift_ms / 1000;
  if (ups.hop() != hop_samples)
    throw std::invalid_argument("teacher: upsampling scales multiply to " +
                                std::to_string(ups.hop()) + " but the hop is " +
                                std::to_string(hop_samples) + " samples");
}

TeacherSpec TeacherSpec::paper() {
  TeacherSpec s;
  s.stack = {24, 4, 128, 128, 3, true, 80};
  s.ups = {{2, 2, 2, 3, 5}, 80};
  s.sample_rate = 24000;
  return s;
}

TeacherSpec TeacherSpec::desk() {
  TeacherSpec s;
  s.stack = {12, 2, 32, 32, 3, true, 80};
  s.ups = {{2, 4, 5}, 80};
  s.sample_rate = 8000;
  return s;
}

Teacher::Teacher(TeacherSpec spec, uint64_t init_seed) : spec_(spec) {
  spec_.validate();
  Rng rng(init_seed);
  upsampler_ = std::make_unique<Upsampler>(spec_.ups, "upsampler.");
  stack_ = std::make_unique<ResidualStack>(spec_.stack, "stack.", rng);
  const int64_t s = spec_.stack.skip_channels;
  head_a_w_ = init_conv_weight({s, s, 1}, s, rng);
  head_a_b_ = Tensor::parameter({s}, std::vector<double>(s, 0.0));
  head_b_w_ = init_conv_weight({2, s, 1}, s, rng);
  head_b_b_ = Tensor::parameter({2}, std::vector<double>(2, 0.0));
  for (const auto& p : upsampler_->params()) params_.push_back(p);
  for (const auto& p : stack_->params()) params_.push_back(p);
  params_.push_back({"head.a.w", head_a_w_});
  params_.push_back({"head.a.b", head_a_b_});
  params_.push_back({"head.b.w", head_b_w_});
  params_.push_back({"head.b.b", head_b_b_});
}

Tensor Teacher::upsample(const Tensor& mel) const { return upsampler_->forward(mel); }

TeacherOutput Teacher::forward(const Tensor& x, const Tensor& cond) const {
  if (x.shape().size() != 1)
    throw std::invalid_argument("teacher: waveform must be rank 1, got " + shape_str(x.shape()));
  eval_count++;
  const Tensor input = reshape(shift_right(x), {1, x.shape()[0]});
  const Tensor skips = stack_->forward(input, cond);
  Tensor h = conv1d(skips, head_a_w_, head_a_b_, {true, 1, 1});
  h = relu(h);
  const Tensor out2 = conv1d(h, head_b_w_, head_b_b_, {true, 1, 1});
  TeacherOutput out;
  out.mu = row(out2, 0);
  out.log_sigma = clamp_min(row(out2, 1), spec_.log_sigma_floor);
  return out;
}

Tensor Teacher::nll(const TeacherOutput& out, const Tensor& x) const {
  if (x.shape() != out.mu.shape())
    throw std::invalid_argument("teacher nll: shape mismatch " + shape_str(x.shape()) + " vs " +
                                shape_str(out.mu.shape()));
  const Tensor resid = x - out.mu;
  const Tensor inv_var = exp(out.log_sigma * -2.0);
  return mean(out.log_sigma + 0.5 * (square(resid) * inv_var) + 0.5 * std::log(2.0 * M_PI));
}

Teacher::SampleResult Teacher::sample(const std::vector<double>& cond, int64_t t_len, Rng& rng,
                                      double temperature) const {
  if (static_cast<int64_t>(cond.size()) != spec_.ups.n_mels * t_len)
    throw std::invalid_argument("teacher sample: conditioning does not cover the target length");
  SampleResult res;
  res.x.resize(t_len);
  res.mu.resize(t_len);
  res.log_sigma.resize(t_len);
  // Column-major view of the conditioning for cache-friendly per-step access.
  std::vector<double> cond_cols(cond.size());
  const int64_t m = spec_.ups.n_mels;
  for (int64_t i = 0; i < m; ++i)
    for (int64_t t = 0; t < t_len; ++t) cond_cols[t * m + i] = cond[i * t_len + t];

  auto st = stack_->make_step_state();
  const int64_t sk = spec_.stack.skip_channels;
  std::vector<double> skip(sk), ha(sk);
  const double* aw = head_a_w_.values().data();
  const double* ab = head_a_b_.values().data();
  const double* bw = head_b_w_.values().data();
  const double* bb = head_b_b_.values().data();
  double prev = 0.0;
  for (int64_t t = 0; t < t_len; ++t) {
    std::fill(skip.begin(), skip.end(), 0.0);
    stack_->step(st, prev, cond_cols.data() + t * m, skip.data());
    for (int64_t i = 0; i < sk; ++i) {
      double acc = ab[i];
      const double* wr = aw + i * sk;
      for (int64_t j = 0; j < sk; ++j) acc += wr[j] * skip[j];
      ha[i] = acc > 0.0 ? acc : 0.0;
    }
    double mu = bb[0], ls = bb[1];
    for (int64_t j = 0; j < sk; ++j) {
      mu += bw[j] * ha[j];
      ls += bw[sk + j] * ha[j];
    }
    ls = std::max(ls, spec_.log_sigma_floor);
    const double eps = rng.normal();
    double xt = mu + temperature * std::exp(ls) * eps;
    xt = std::clamp(xt, -1.0, 1.0);
    res.x[t] = xt;
    res.mu[t] = mu;
    res.log_sigma[t] = ls;
    prev = xt;
    res.loop_iterations++;
  }
  return res;
}

void Teacher::set_trainable(bool trainable) {
  for (auto& p : params_) p.tensor.set_requires_grad(trainable);
}

namespace {

std::vector<uint32_t> teacher_spec_fields(const TeacherSpec& s) {
  std::vector<uint32_t> f = {
      static_cast<uint32_t>(s.sample_rate),
      static_cast<uint32_t>(s.ups.n_mels),
      static_cast<uint32_t>(s.frame_ms),
      static_cast<uint32_t>(s.shift_ms),
      static_cast<uint32_t>(s.stack.n_layers),
      static_cast<uint32_t>(s.stack.n_cycles),
      static_cast<uint32_t>(s.stack.residual_channels),
      static_cast<uint32_t>(s.stack.skip_channels),
      static_cast<uint32_t>(s.stack.filter_size),
      static_cast<uint32_t>(-s.log_sigma_floor),
      static_cast<uint32_t>(s.ups.scales.size()),
  };
  for (int64_t sc : s.ups.scales) f.push_back(static_cast<uint32_t>(sc));
  return f;
}

TeacherSpec teacher_spec_from_fields(const std::vector<uint32_t>& f) {
  if (f.size() < 11) throw std::runtime_error("teacher checkpoint: malformed spec section");
  TeacherSpec s;
  s.sample_rate = static_cast<int>(f[0]);
  s.ups.n_mels = f[1];
  s.frame_ms = static_cast<int>(f[2]);
  s.shift_ms = static_cast<int>(f[3]);
  s.stack = {static_cast<int64_t>(f[4]),  static_cast<int64_t>(f[5]), static_cast<int64_t>(f[6]),
             static_cast<int64_t>(f[7]),  static_cast<int64_t>(f[8]), true,
             static_cast<int64_t>(f[1])};
  s.log_sigma_floor = -static_cast<double>(f[9]);
  const uint32_t nscales = f[10];
  if (f.size() != 11 + nscales) throw std::runtime_error("teacher checkpoint: malformed spec section");
  s.ups.scales.assign(f.begin() + 11, f.end());
  return s;
}

}  // namespace

void Teacher::save(const std::string& path) const {
  ck::write(path, ck::kTeacher, teacher_spec_fields(spec_), ck::to_records(params_));
}

Teacher Teacher::load(const std::string& path) {
  const ck::File f = ck::read(path);
  if (f.kind != ck::kTeacher)
    throw std::runtime_error("checkpoint: " + path + " is not a teacher model");
  Teacher t(teacher_spec_from_fields(f.spec), 0);
  ck::load_into(f.params, t.params_);
  return t;
}

}  // namespace pddforge
