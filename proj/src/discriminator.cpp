#include "pddforge/discriminator.hpp"

#include <stdexcept>

#include "pddforge/checkpoint.hpp"
#include "pddforge/ops.hpp"
#include "pddforge/wavenet.hpp"

namespace pddforge {

int64_t DiscriminatorSpec::receptive_field() const {
  int64_t sum = 0;
  for (int64_t d : dilations) sum += d;
  return 1 + (filter_size - 1) * sum;
}

void DiscriminatorSpec::validate() const {
  if (n_layers < 2) throw std::invalid_argument("discriminator: need at least two layers");
  if (static_cast<int64_t>(dilations.size()) != n_layers)
    throw std::invalid_argument("discriminator: dilation list must cover every layer");
  if (filter_size < 1 || filter_size % 2 == 0)
    throw std::invalid_argument("discriminator: filter size must be odd");
  for (int64_t d : dilations)
    if (d < 1) throw std::invalid_argument("discriminator: dilations must be positive");
}

DiscriminatorSpec DiscriminatorSpec::paper() { return DiscriminatorSpec{}; }

DiscriminatorSpec DiscriminatorSpec::desk() {
  DiscriminatorSpec s;
  s.n_layers = 6;
  s.channels = 16;
  s.dilations = {1, 2, 3, 4, 3, 1};
  return s;
}

Discriminator::Discriminator(DiscriminatorSpec spec, uint64_t init_seed) : spec_(std::move(spec)) {
  spec_.validate();
  Rng rng(init_seed);
  const int64_t c = spec_.channels, k = spec_.filter_size;
  auto zeros1 = [](int64_t n) { return Tensor::parameter({n}, std::vector<double>(n, 0.0)); };
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    const int64_t cin = l == 0 ? 1 : c;
    const int64_t cout = l == spec_.n_layers - 1 ? 1 : c;
    const std::string lp = "l" + std::to_string(l) + ".";
    params_.push_back({lp + "w", init_conv_weight({cout, cin, k}, cin * k, rng)});
    params_.push_back({lp + "b", zeros1(cout)});
  }
}

Tensor Discriminator::scores(const Tensor& x) const {
  if (x.shape().size() != 1 || x.shape()[0] < 1)
    throw std::invalid_argument("discriminator: empty input");
  eval_count++;
  const int64_t t = x.shape()[0];
  Tensor h = reshape(x, {1, t});
  for (int64_t l = 0; l < spec_.n_layers; ++l) {
    h = conv1d(h, params_[2 * l].tensor, params_[2 * l + 1].tensor,
               {false, spec_.dilations[l], 1});
    if (l != spec_.n_layers - 1) h = leaky_relu(h, spec_.leaky_alpha);
  }
  return reshape(h, {t});
}

Tensor score_mean(const Tensor& scores) { return mean(scores); }

void Discriminator::save(const std::string& path) const {
  std::vector<uint32_t> fields = {
      static_cast<uint32_t>(spec_.n_layers),
      static_cast<uint32_t>(spec_.channels),
      static_cast<uint32_t>(spec_.filter_size),
      static_cast<uint32_t>(spec_.leaky_alpha * 1e6),
      static_cast<uint32_t>(spec_.dilations.size()),
  };
  for (int64_t d : spec_.dilations) fields.push_back(static_cast<uint32_t>(d));
  ck::write(path, ck::kDiscriminator, fields, ck::to_records(params_));
}

Discriminator Discriminator::load(const std::string& path) {
  const ck::File f = ck::read(path);
  if (f.kind != ck::kDiscriminator)
    throw std::runtime_error("checkpoint: " + path + " is not a discriminator model");
  if (f.spec.size() < 5) throw std::runtime_error("discriminator checkpoint: malformed spec section");
  DiscriminatorSpec s;
  s.n_layers = f.spec[0];
  s.channels = f.spec[1];
  s.filter_size = f.spec[2];
  s.leaky_alpha = static_cast<double>(f.spec[3]) / 1e6;
  const uint32_t nd = f.spec[4];
  if (f.spec.size() != 5 + nd) throw std::runtime_error("discriminator checkpoint: malformed spec section");
  s.dilations.assign(f.spec.begin() + 5, f.spec.end());
  Discriminator d(s, 0);
  ck::load_into(f.params, d.params_);
  return d;
}

}  // namespace pddforge
