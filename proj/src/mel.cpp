#include "pddforge/mel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pddforge/checkpoint.hpp"
#include "pddforge/kernels.hpp"

namespace pddforge {

namespace {

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

std::vector<double> mel_filterbank(int n_mels, int64_t fft_len, int sample_rate) {
  const int64_t n_bins = fft_len / 2 + 1;
  const double nyquist = sample_rate / 2.0;
  const double mel_max = hz_to_mel(nyquist);
  std::vector<double> edges_hz(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges_hz[i] = mel_to_hz(mel_max * static_cast<double>(i) / (n_mels + 1));
  std::vector<double> fb(static_cast<size_t>(n_mels) * n_bins, 0.0);
  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(fft_len);
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges_hz[m], mid = edges_hz[m + 1], hi = edges_hz[m + 2];
    double sum = 0.0;
    for (int64_t b = 0; b < n_bins; ++b) {
      const double f = b * bin_hz;
      double w = 0.0;
      if (f > lo && f < mid) w = (f - lo) / (mid - lo);
      else if (f == mid) w = 1.0;
      else if (f > mid && f < hi) w = (hi - f) / (hi - mid);
      fb[m * n_bins + b] = w;
      sum += w;
    }
    if (sum <= 0.0) {
      // Narrow triangle between bin centers: keep the band by assigning the
      // nearest bin.
      const int64_t b = std::clamp<int64_t>(static_cast<int64_t>(std::lround(mid / bin_hz)), 0,
                                            n_bins - 1);
      fb[m * n_bins + b] = 1.0;
    }
  }
  return fb;
}

MelSpectrogram log_mel(const AudioClip& clip, int n_mels, double frame_ms, double shift_ms) {
  const StftConfig cfg = StftConfig::from_ms(clip.sample_rate, frame_ms, shift_ms);
  const Spectrogram spec = stft_magnitude(clip, cfg);
  const auto fb = mel_filterbank(n_mels, cfg.fft_len, clip.sample_rate);
  MelSpectrogram mel;
  mel.n_frames = spec.n_frames;
  mel.n_mels = n_mels;
  mel.frame_ms = frame_ms;
  mel.shift_ms = shift_ms;
  mel.values.resize(spec.n_frames * n_mels);
  // energies = spec [nf, nb] x fb^T [nb, n_mels]
  kernels::matmul_nt(spec.values.data(), fb.data(), mel.values.data(), spec.n_frames, spec.n_bins,
                     n_mels);
  for (double& v : mel.values) v = std::log(std::max(v, kLogMelFloor));
  return mel;
}

FeatureStats compute_stats(std::span<const MelSpectrogram> mels) {
  if (mels.empty()) throw std::invalid_argument("feature stats: no input spectrograms");
  const int64_t bands = mels[0].n_mels;
  FeatureStats st;
  st.mean.assign(bands, 0.0);
  st.std.assign(bands, 0.0);
  int64_t total = 0;
  for (const auto& m : mels) {
    if (m.n_mels != bands) throw std::invalid_argument("feature stats: band count mismatch");
    for (int64_t f = 0; f < m.n_frames; ++f)
      for (int64_t b = 0; b < bands; ++b) st.mean[b] += m.at(f, b);
    total += m.n_frames;
  }
  for (auto& v : st.mean) v /= static_cast<double>(total);
  for (const auto& m : mels)
    for (int64_t f = 0; f < m.n_frames; ++f)
      for (int64_t b = 0; b < bands; ++b) {
        const double d = m.at(f, b) - st.mean[b];
        st.std[b] += d * d;
      }
  for (auto& v : st.std) v = std::max(std::sqrt(v / static_cast<double>(total)), 1e-8);
  return st;
}

MelSpectrogram normalize(const MelSpectrogram& mel, const FeatureStats& stats) {
  if (static_cast<int64_t>(stats.mean.size()) != mel.n_mels)
    throw std::invalid_argument("normalize: band count mismatch: stats " +
                                std::to_string(stats.mean.size()) + " vs features " +
                                std::to_string(mel.n_mels));
  MelSpectrogram out = mel;
  for (int64_t f = 0; f < mel.n_frames; ++f)
    for (int64_t b = 0; b < mel.n_mels; ++b)
      out.values[f * mel.n_mels + b] = (mel.at(f, b) - stats.mean[b]) / stats.std[b];
  return out;
}

MelSpectrogram denormalize(const MelSpectrogram& mel, const FeatureStats& stats) {
  if (static_cast<int64_t>(stats.mean.size()) != mel.n_mels)
    throw std::invalid_argument("denormalize: band count mismatch");
  MelSpectrogram out = mel;
  for (int64_t f = 0; f < mel.n_frames; ++f)
    for (int64_t b = 0; b < mel.n_mels; ++b)
      out.values[f * mel.n_mels + b] = mel.at(f, b) * stats.std[b] + stats.mean[b];
  return out;
}

void save_stats(const FeatureStats& stats, int sample_rate, int n_mels, const std::string& path) {
  std::vector<ck::ParamRecord> recs;
  recs.push_back({"mel_mean", {static_cast<int64_t>(stats.mean.size())}, stats.mean});
  recs.push_back({"mel_std", {static_cast<int64_t>(stats.std.size())}, stats.std});
  const uint32_t spec[] = {static_cast<uint32_t>(sample_rate), static_cast<uint32_t>(n_mels)};
  ck::write(path, ck::kFeatureStats, spec, recs);
}

FeatureStats load_stats(const std::string& path, int expect_sample_rate, int expect_n_mels) {
  const ck::File f = ck::read(path);
  if (f.kind != ck::kFeatureStats) throw std::runtime_error("stats: wrong model kind in " + path);
  if (f.spec.size() != 2 || f.spec[0] != static_cast<uint32_t>(expect_sample_rate) ||
      f.spec[1] != static_cast<uint32_t>(expect_n_mels))
    throw std::runtime_error("stats: sample rate / band mismatch in " + path);
  FeatureStats st;
  for (const auto& r : f.params) {
    if (r.name == "mel_mean") st.mean = r.data;
    if (r.name == "mel_std") st.std = r.data;
  }
  if (st.mean.empty() || st.std.size() != st.mean.size())
    throw std::runtime_error("stats: malformed records in " + path);
  return st;
}

}  // namespace pddforge
