#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pddforge/audio.hpp"
#include "pddforge/stft.hpp"

namespace pddforge {

/// Log-domain mel spectrogram, one row per frame.
struct MelSpectrogram {
  int64_t n_frames = 0;
  int64_t n_mels = 0;
  std::vector<double> values;  // [n_frames, n_mels] row-major
  double frame_ms = 25.0, shift_ms = 5.0;

  double at(int64_t f, int64_t m) const { return values[f * n_mels + m]; }
};

struct FeatureStats {
  std::vector<double> mean, std;  // per band; std floored at 1e-8
};

// Triangular filterbank on the HTK mel scale (2595*log10(1+f/700)), fmin 0,
// fmax Nyquist, weights linear in Hz at the FFT bin centers. A filter whose
// triangle straddles no bin center falls back to its single nearest bin so
// every row keeps positive mass. Returns [n_mels, n_bins] row-major.
std::vector<double> mel_filterbank(int n_mels, int64_t fft_len, int sample_rate);

// Magnitude STFT -> mel energies -> natural log with floor 1e-10.
MelSpectrogram log_mel(const AudioClip& clip, int n_mels = 80, double frame_ms = 25.0,
                       double shift_ms = 5.0);

FeatureStats compute_stats(std::span<const MelSpectrogram> mels);
// (v - mean) / std per band; band-count mismatch is rejected.
MelSpectrogram normalize(const MelSpectrogram& mel, const FeatureStats& stats);
MelSpectrogram denormalize(const MelSpectrogram& mel, const FeatureStats& stats);

void save_stats(const FeatureStats& stats, int sample_rate, int n_mels, const std::string& path);
FeatureStats load_stats(const std::string& path, int expect_sample_rate, int expect_n_mels);

inline constexpr double kLogMelFloor = 1e-10;

}  // namespace pddforge
