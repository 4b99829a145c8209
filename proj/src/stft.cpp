#include "pddforge/stft.hpp"

#include <cmath>
#include <stdexcept>

#include "pddforge/fft.hpp"
#include "pddforge/kernels.hpp"

namespace pddforge {

StftConfig StftConfig::from_ms(int sample_rate, double frame_ms, double shift_ms) {
  StftConfig cfg;
  cfg.frame_len = static_cast<int64_t>(std::llround(frame_ms * 1e-3 * sample_rate));
  cfg.shift = static_cast<int64_t>(std::llround(shift_ms * 1e-3 * sample_rate));
  cfg.fft_len = next_pow2(cfg.frame_len);
  return cfg;
}

std::vector<double> hann_window(int64_t n) {
  std::vector<double> w(n);
  for (int64_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
  return w;
}

Spectrogram stft_magnitude(std::span<const double> samples, const StftConfig& cfg) {
  const int64_t t = static_cast<int64_t>(samples.size());
  if (t < cfg.frame_len)
    throw std::invalid_argument("stft: clip of " + std::to_string(t) +
                                " samples is shorter than one frame (" +
                                std::to_string(cfg.frame_len) + ")");
  kernels::StftDims d{t, cfg.frame_len, cfg.shift, cfg.fft_len};
  Spectrogram spec;
  spec.n_frames = d.n_frames();
  spec.n_bins = d.n_bins();
  spec.values.resize(spec.n_frames * spec.n_bins);
  const auto window = hann_window(cfg.frame_len);
  kernels::stft_magnitude_forward(samples.data(), window.data(), spec.values.data(), nullptr, d);
  return spec;
}

Spectrogram stft_magnitude(const AudioClip& clip, const StftConfig& cfg) {
  return stft_magnitude(std::span<const double>(clip.samples), cfg);
}

}  // namespace pddforge
