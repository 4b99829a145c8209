#include "pddforge/losses.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "pddforge/log.hpp"
#include "pddforge/ops.hpp"

namespace pddforge {

Tensor kld_regularized(const Tensor& mu_q, const Tensor& log_sigma_q, const Tensor& mu_p,
                       const Tensor& log_sigma_p, double lambda_reg) {
  if (mu_q.shape() != mu_p.shape() || log_sigma_q.shape() != log_sigma_p.shape() ||
      mu_q.shape() != log_sigma_q.shape())
    throw std::invalid_argument("kld: shape mismatch " + shape_str(mu_q.shape()) + " vs " +
                                shape_str(mu_p.shape()));
  // Written in terms of log-sigma differences so that identical inputs cancel
  // exactly to zero.
  const Tensor a = log_sigma_q - log_sigma_p;
  const Tensor ratio = exp(a * 2.0);
  const Tensor scaled_gap = square(mu_q - mu_p) * exp(log_sigma_p * -2.0);
  const Tensor kl = neg(a) + (ratio + scaled_gap) * 0.5 - 0.5;
  const Tensor reg = square(a) * lambda_reg;
  return mean(reg + kl);
}

StftLossPair stft_losses(const Tensor& x, const Tensor& xhat, const StftConfig& cfg) {
  if (x.shape() != xhat.shape())
    throw std::invalid_argument("stft loss: shape mismatch " + shape_str(x.shape()) + " vs " +
                                shape_str(xhat.shape()));
  const Tensor mx = stft_magnitude(x, cfg.frame_len, cfg.shift, cfg.fft_len);
  const Tensor mh = stft_magnitude(xhat, cfg.frame_len, cfg.shift, cfg.fft_len);
  StftLossPair out;
  out.n_frames = mx.shape()[0];
  out.n_bins = mx.shape()[1];
  const Tensor num = sqrt(sum(square(mx - mh)));
  const Tensor den = sqrt(sum(square(mx)));
  if (den.item() <= 1e-12)
    logging::info("spectral convergence: reference spectrogram is all-zero, denominator floored");
  out.sc = reshape(num / clamp_min(den, 1e-12), {1});
  out.mag = sum(abs(log(clamp_min(mx, 1e-7)) - log(clamp_min(mh, 1e-7))));
  out.lambda_mag = 1.0 / static_cast<double>(out.n_frames * out.n_bins);
  out.aux = out.sc + out.mag * out.lambda_mag;
  return out;
}

Tensor spectral_convergence(const Tensor& x, const Tensor& xhat, const StftConfig& cfg) {
  return stft_losses(x, xhat, cfg).sc;
}

Tensor log_stft_magnitude(const Tensor& x, const Tensor& xhat, const StftConfig& cfg) {
  return stft_losses(x, xhat, cfg).mag;
}

Tensor adv_loss_generator(const Tensor& d_out) { return mean(square(1.0 - d_out)); }

Tensor adv_loss_discriminator(const Tensor& d_real, const Tensor& d_fake) {
  return mean(square(1.0 - d_real)) + mean(square(d_fake));
}

void LossWeights::validate() const {
  if (kld < 0.0 || aux < 0.0 || adv < 0.0)
    throw std::invalid_argument("loss weights: negative weights are rejected");
  if (lambda_reg < 0.0) throw std::invalid_argument("loss weights: negative regularizer");
}

const std::vector<std::string>& LossWeights::preset_names() {
  static const std::vector<std::string> names = {"AX", "AXAD", "KLAX", "KLAXAD", "KLAXAD*"};
  return names;
}

LossWeights LossWeights::preset(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  LossWeights w;
  if (up == "AX") {
    w.kld = 0.0; w.aux = 1.00; w.adv = 0.0;
  } else if (up == "AXAD") {
    w.kld = 0.0; w.aux = 0.33; w.adv = 0.67;
  } else if (up == "KLAX") {
    w.kld = 0.09; w.aux = 0.91; w.adv = 0.0;
  } else if (up == "KLAXAD") {
    w.kld = 0.03; w.aux = 0.32; w.adv = 0.65;
  } else if (up == "KLAXAD*") {
    w.kld = 0.0; w.aux = 0.33; w.adv = 0.67;
  } else {
    std::string msg = "unknown preset '" + name + "'; expected one of {";
    for (size_t i = 0; i < preset_names().size(); ++i)
      msg += (i ? ", " : "") + preset_names()[i];
    throw UsageError(msg + "}");
  }
  return w;
}

Tensor generator_objective(const Tensor& kld, const Tensor& aux, const Tensor& adv,
                           const LossWeights& w) {
  w.validate();
  Tensor total;
  auto add_term = [&](const Tensor& term, double weight, const char* name) {
    if (weight == 0.0) return;
    if (!term.defined())
      throw std::invalid_argument(std::string("generator objective: missing ") + name +
                                  " term for nonzero weight");
    const Tensor scaled = term * weight;
    total = total.defined() ? total + scaled : scaled;
  };
  add_term(kld, w.kld, "kld");
  add_term(aux, w.aux, "aux");
  add_term(adv, w.adv, "adv");
  if (!total.defined()) total = Tensor::scalar(0.0);
  return total;
}

const char* LossReport::csv_header() {
  return "step,kld,sc,mag,aux,adv_g,adv_d,total_g,lr_g,lr_d,phase";
}

std::string LossReport::csv_row() const {
  char buf[384];
  std::snprintf(buf, sizeof(buf),
                "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s",
                static_cast<long long>(step), kld, sc, mag, aux, adv_g, adv_d, total_g, lr_g, lr_d,
                phase.c_str());
  return buf;
}

}  // namespace pddforge
