#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pddforge/audio.hpp"

namespace pddforge {

struct StftConfig {
  int64_t frame_len = 0;
  int64_t shift = 0;
  int64_t fft_len = 0;

  int64_t n_bins() const { return fft_len / 2 + 1; }
  int64_t n_frames(int64_t t) const { return (t - frame_len) / shift + 1; }

  // 25 ms / 5 ms defaults; FFT length is the smallest power of two >= frame.
  static StftConfig from_ms(int sample_rate, double frame_ms = 25.0, double shift_ms = 5.0);
};

struct Spectrogram {
  int64_t n_frames = 0;
  int64_t n_bins = 0;
  std::vector<double> values;  // [n_frames, n_bins] row-major

  double at(int64_t f, int64_t b) const { return values[f * n_bins + b]; }
};

// Hann-windowed magnitude STFT. Throws if the clip is shorter than a frame.
Spectrogram stft_magnitude(std::span<const double> samples, const StftConfig& cfg);
Spectrogram stft_magnitude(const AudioClip& clip, const StftConfig& cfg);

std::vector<double> hann_window(int64_t n);

}  // namespace pddforge
