#include "pddforge/student.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pddforge/checkpoint.hpp"
#include "pddforge/ops.hpp"

namespace pddforge {

void StudentSpec::validate() const {
  if (n_flows < 1) throw std::invalid_argument("student: need at least one flow");
  flow_stack.validate();
  ups.validate();
  if (flow_stack.cond_channels != ups.n_mels)
    throw std::invalid_argument("student: flow conditioning channels must equal mel bands");
  if (!flow_stack.causal) throw std::invalid_argument("student: flow stacks must be causal");
  const int64_t hop_samples = static_cast<int64_t>(sample_rate) * shift_ms / 1000;
  if (ups.hop() != hop_samples)
    throw std::invalid_argument("student: upsampling scales multiply to " +
                                std::to_string(ups.hop()) + " but the hop is " +
                                std::to_string(hop_samples) + " samples");
}

StudentSpec StudentSpec::paper() {
  StudentSpec s;
  s.n_flows = 6;
  s.flow_stack = {10, 1, 64, 64, 3, true, 80};
  s.ups = {{2, 2, 2, 3, 5}, 80};
  s.sample_rate = 24000;
  return s;
}

StudentSpec StudentSpec::desk() {
  StudentSpec s;
  s.n_flows = 2;
  s.flow_stack = {6, 1, 16, 16, 3, true, 80};
  s.ups = {{2, 4, 5}, 80};
  s.sample_rate = 8000;
  return s;
}

Student::Student(StudentSpec spec, uint64_t init_seed) : spec_(spec) {
  spec_.validate();
  Rng rng(init_seed);
  upsampler_ = std::make_unique<Upsampler>(spec_.ups, "upsampler.");
  const int64_t s = spec_.flow_stack.skip_channels;
  for (int64_t i = 0; i < spec_.n_flows; ++i) {
    Flow fl;
    const std::string fp = "flow" + std::to_string(i) + ".";
    fl.stack = std::make_unique<ResidualStack>(spec_.flow_stack, fp, rng);
    fl.head_a_w = init_conv_weight({s, s, 1}, s, rng);
    fl.head_a_b = Tensor::parameter({s}, std::vector<double>(s, 0.0));
    // Zero-initialized projection: every flow starts as the identity, which
    // keeps the initial composed distribution N(0, 1)-like and finite.
    fl.head_b_w = Tensor::parameter({2, s, 1}, std::vector<double>(2 * s, 0.0));
    fl.head_b_b = Tensor::parameter({2}, std::vector<double>(2, 0.0));
    flows_.push_back(std::move(fl));
  }
  for (const auto& p : upsampler_->params()) params_.push_back(p);
  for (int64_t i = 0; i < spec_.n_flows; ++i) {
    const std::string fp = "flow" + std::to_string(i) + ".";
    for (const auto& p : flows_[i].stack->params()) params_.push_back(p);
    params_.push_back({fp + "head.a.w", flows_[i].head_a_w});
    params_.push_back({fp + "head.a.b", flows_[i].head_a_b});
    params_.push_back({fp + "head.b.w", flows_[i].head_b_w});
    params_.push_back({fp + "head.b.b", flows_[i].head_b_b});
  }
}

Tensor Student::upsample(const Tensor& mel) const { return upsampler_->forward(mel); }

void Student::copy_upsampler_from(const Teacher& teacher) {
  const auto& src = teacher.params();
  auto& dst = upsampler_->params();
  for (auto& d : dst) {
    bool found = false;
    for (const auto& srec : src)
      if (srec.name == d.name) {
        if (srec.tensor.shape() != d.tensor.shape())
          throw std::invalid_argument("student: teacher upsampler shape mismatch for " + d.name);
        d.tensor.mutable_values() = srec.tensor.values();
        found = true;
        break;
      }
    if (!found) throw std::invalid_argument("student: teacher has no parameter " + d.name);
  }
}

Student::FlowOutput Student::flow_forward(int64_t flow_index, const Tensor& z_in,
                                          const Tensor& cond) const {
  if (flow_index < 0 || flow_index >= spec_.n_flows)
    throw std::invalid_argument("student: flow index out of range");
  if (z_in.shape().size() != 1)
    throw std::invalid_argument("student: flow input must be rank 1, got " +
                                shape_str(z_in.shape()));
  const Flow& fl = flows_[flow_index];
  flow_pass_count++;
  const Tensor input = reshape(shift_right(z_in), {1, z_in.shape()[0]});
  const Tensor skips = fl.stack->forward(input, cond);
  Tensor h = conv1d(skips, fl.head_a_w, fl.head_a_b, {true, 1, 1});
  h = relu(h);
  const Tensor out2 = conv1d(h, fl.head_b_w, fl.head_b_b, {true, 1, 1});
  FlowOutput out;
  out.mu = row(out2, 0);
  out.log_sigma = clamp_min(row(out2, 1), spec_.log_sigma_floor);
  return out;
}

Student::Transform Student::transform(const Tensor& z, const Tensor& cond) const {
  Transform tr;
  Tensor z_cur = z;
  Tensor mu_acc, ls_acc;
  for (int64_t i = 0; i < spec_.n_flows; ++i) {
    const FlowOutput fo = flow_forward(i, z_cur, cond);
    const Tensor sigma_i = exp(fo.log_sigma);
    z_cur = fo.mu + sigma_i * z_cur;
    if (i == 0) {
      mu_acc = fo.mu;
      ls_acc = fo.log_sigma;
    } else {
      mu_acc = fo.mu + sigma_i * mu_acc;
      ls_acc = ls_acc + fo.log_sigma;
    }
  }
  tr.mu_q = mu_acc;
  tr.log_sigma_q = ls_acc;
  tr.xhat = mu_acc + exp(ls_acc) * z;
  tr.sequential_out = z_cur;
  return tr;
}

Student::Synthesis Student::synthesize(const std::vector<double>& cond, int64_t t_len,
                                       Rng& rng) const {
  if (static_cast<int64_t>(cond.size()) != spec_.ups.n_mels * t_len)
    throw std::invalid_argument("student synthesize: conditioning does not cover the target length");
  NoGradGuard ng;
  const int64_t before = flow_pass_count;
  const Tensor z = Tensor::from({t_len}, rng.normals(t_len));
  const Tensor cond_t = Tensor::from({spec_.ups.n_mels, t_len}, cond);
  const Transform tr = transform(z, cond_t);
  Synthesis out;
  out.network_passes = flow_pass_count - before;
  out.x = tr.xhat.values();
  for (double& v : out.x) v = std::clamp(v, -1.0, 1.0);
  return out;
}

namespace {

std::vector<uint32_t> student_spec_fields(const StudentSpec& s) {
  std::vector<uint32_t> f = {
      static_cast<uint32_t>(s.sample_rate),
      static_cast<uint32_t>(s.ups.n_mels),
      static_cast<uint32_t>(s.frame_ms),
      static_cast<uint32_t>(s.shift_ms),
      static_cast<uint32_t>(s.n_flows),
      static_cast<uint32_t>(s.flow_stack.n_layers),
      static_cast<uint32_t>(s.flow_stack.n_cycles),
      static_cast<uint32_t>(s.flow_stack.residual_channels),
      static_cast<uint32_t>(s.flow_stack.skip_channels),
      static_cast<uint32_t>(s.flow_stack.filter_size),
      static_cast<uint32_t>(-s.log_sigma_floor),
      static_cast<uint32_t>(s.ups.scales.size()),
  };
  for (int64_t sc : s.ups.scales) f.push_back(static_cast<uint32_t>(sc));
  return f;
}

StudentSpec student_spec_from_fields(const std::vector<uint32_t>& f) {
  if (f.size() < 12) throw std::runtime_error("student checkpoint: malformed spec section");
  StudentSpec s;
  s.sample_rate = static_cast<int>(f[0]);
  s.ups.n_mels = f[1];
  s.frame_ms = static_cast<int>(f[2]);
  s.shift_ms = static_cast<int>(f[3]);
  s.n_flows = f[4];
  s.flow_stack = {static_cast<int64_t>(f[5]), static_cast<int64_t>(f[6]),
                  static_cast<int64_t>(f[7]), static_cast<int64_t>(f[8]),
                  static_cast<int64_t>(f[9]), true, static_cast<int64_t>(f[1])};
  s.log_sigma_floor = -static_cast<double>(f[10]);
  const uint32_t nscales = f[11];
  if (f.size() != 12 + nscales) throw std::runtime_error("student checkpoint: malformed spec section");
  s.ups.scales.assign(f.begin() + 12, f.end());
  return s;
}

}  // namespace

void Student::save(const std::string& path) const {
  ck::write(path, ck::kStudent, student_spec_fields(spec_), ck::to_records(params_));
}

Student Student::load(const std::string& path) {
  const ck::File f = ck::read(path);
  if (f.kind != ck::kStudent)
    throw std::runtime_error("checkpoint: " + path + " is not a student model");
  Student st(student_spec_from_fields(f.spec), 0);
  ck::load_into(f.params, st.params_);
  return st;
}

}  // namespace pddforge
