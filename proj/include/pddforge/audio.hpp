#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pddforge {

/// Mono waveform with samples in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

/// Reads a RIFF/WAVE file. Only 16-bit PCM mono is accepted; samples are
/// scaled by 1/32768.
AudioClip read_wav(const std::string& path);

/// Writes 16-bit PCM mono. Samples are clamped to [-1, 1] and scaled by
/// 32768, so read(write(x)) is within one LSB of x.
void write_wav(const AudioClip& clip, const std::string& path);

struct TrimResult {
  AudioClip clip;
  bool fully_silent = false;
};

/// Drops leading/trailing windows whose RMS is below `threshold_db` relative
/// to the clip peak. Interior audio is never removed.
TrimResult trim_silence(const AudioClip& clip, double threshold_db = -40.0,
                        double window_ms = 25.0);

/// Deterministic synthetic speech-like corpus: harmonic tones with a slowly
/// varying f0 in [80, 300] Hz, 1/k harmonic decay, an amplitude envelope and
/// -30 dB Gaussian noise, peak-normalized to 0.9.
std::vector<AudioClip> make_toy_corpus(int n_utts, double duration_s, int sample_rate,
                                       uint64_t seed);

}  // namespace pddforge
