#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pddforge/stft.hpp"
#include "pddforge/tensor.hpp"

namespace pddforge {

// Per-timestep Gaussian distillation criterion between a composed transform
// q and a density model p, both given as (mu, log sigma) sequences:
// mean over t of lambda_reg*(log s_q - log s_p)^2 + KL(q_t || p_t), with the
// closed form KL = log(s_p/s_q) + (s_q^2 + (mu_q - mu_p)^2)/(2 s_p^2) - 1/2.
// Sigmas arrive pre-clamped in log domain, so positivity is structural.
Tensor kld_regularized(const Tensor& mu_q, const Tensor& log_sigma_q, const Tensor& mu_p,
                       const Tensor& log_sigma_p, double lambda_reg = 4.0);

// Frobenius-normalized magnitude spectrogram error; denominator floored at
// 1e-12 (an all-zero reference is flagged in the log).
Tensor spectral_convergence(const Tensor& x, const Tensor& xhat, const StftConfig& cfg);

// L1 distance of log magnitudes summed over all frames and bins; magnitudes
// floored at 1e-7 before the log.
Tensor log_stft_magnitude(const Tensor& x, const Tensor& xhat, const StftConfig& cfg);

struct StftLossPair {
  Tensor sc, mag, aux;  // aux = sc + lambda_mag * mag
  double lambda_mag = 0.0;
  int64_t n_frames = 0, n_bins = 0;
};
// Both spectral losses from one pair of transforms; lambda_mag is
// 1/(n_frames * n_bins) for the realized spectrogram shape.
StftLossPair stft_losses(const Tensor& x, const Tensor& xhat, const StftConfig& cfg);

// Least-squares criteria. d_out holds discriminator scores (raw per-timestep
// or already averaged per clip).
Tensor adv_loss_generator(const Tensor& d_out);                            // mean (1 - D)^2
Tensor adv_loss_discriminator(const Tensor& d_real, const Tensor& d_fake); // mean (1-D(x))^2 + mean D(x̂)^2

struct LossWeights {
  double kld = 0.0, aux = 0.0, adv = 0.0;
  double lambda_reg = 4.0;

  void validate() const;  // weights must be non-negative
  // Case-insensitive named presets: AX, AXAD, KLAX, KLAXAD, KLAXAD*.
  static LossWeights preset(const std::string& name);
  static const std::vector<std::string>& preset_names();
};

// Weighted sum of the three criteria. Undefined tensors are allowed (and
// required to be skipped) where the matching weight is zero.
Tensor generator_objective(const Tensor& kld, const Tensor& aux, const Tensor& adv,
                           const LossWeights& w);

struct LossReport {
  int64_t step = 0;
  double kld = 0, sc = 0, mag = 0, aux = 0, adv_g = 0, adv_d = 0, total_g = 0;
  double lr_g = 0, lr_d = 0;
  std::string phase;

  static const char* csv_header();
  std::string csv_row() const;
};

}  // namespace pddforge
