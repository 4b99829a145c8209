#include "pddforge/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "pddforge/rng.hpp"

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

namespace pddforge {

namespace {

template <class T>
T read_le(std::istream& is, const char* what) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
    throw std::runtime_error(std::string("wav: truncated file while reading ") + what);
  return v;
}

template <class T>
void write_le(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

AudioClip read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("wav: cannot open " + path);
  char tag[4];
  if (!is.read(tag, 4) || std::memcmp(tag, "RIFF", 4) != 0)
    throw std::runtime_error("wav: not a RIFF file: " + path);
  read_le<uint32_t>(is, "RIFF size");
  if (!is.read(tag, 4) || std::memcmp(tag, "WAVE", 4) != 0)
    throw std::runtime_error("wav: not a WAVE file: " + path);

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  AudioClip clip;
  while (is.read(tag, 4)) {
    const uint32_t size = read_le<uint32_t>(is, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw std::runtime_error("wav: malformed fmt chunk");
      format = read_le<uint16_t>(is, "format");
      channels = read_le<uint16_t>(is, "channels");
      sample_rate = read_le<uint32_t>(is, "sample rate");
      read_le<uint32_t>(is, "byte rate");
      read_le<uint16_t>(is, "block align");
      bits = read_le<uint16_t>(is, "bits per sample");
      is.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw std::runtime_error("wav: data chunk before fmt chunk");
      if (format != 1) throw std::runtime_error("wav: unsupported format tag " + std::to_string(format) + " (PCM only)");
      if (channels != 1) throw std::runtime_error("wav: unsupported channel count " + std::to_string(channels));
      if (bits != 16) throw std::runtime_error("wav: unsupported bit depth " + std::to_string(bits) + " (16-bit only)");
      const size_t n = size / 2;
      std::vector<int16_t> raw(n);
      if (!is.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2)))
        throw std::runtime_error("wav: truncated data chunk in " + path);
      clip.sample_rate = static_cast<int>(sample_rate);
      clip.samples.resize(n);
      for (size_t i = 0; i < n; ++i) clip.samples[i] = static_cast<double>(raw[i]) / 32768.0;
      return clip;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);  // skip unknown chunk
    }
  }
  throw std::runtime_error("wav: no data chunk in " + path);
}

void write_wav(const AudioClip& clip, const std::string& path) {
  if (clip.sample_rate <= 0) throw std::runtime_error("wav: clip has no sample rate");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("wav: cannot open " + path + " for writing");
  const uint32_t data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  os.write("RIFF", 4);
  write_le<uint32_t>(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_le<uint32_t>(os, 16);
  write_le<uint16_t>(os, 1);  // PCM
  write_le<uint16_t>(os, 1);  // mono
  write_le<uint32_t>(os, static_cast<uint32_t>(clip.sample_rate));
  write_le<uint32_t>(os, static_cast<uint32_t>(clip.sample_rate * 2));
  write_le<uint16_t>(os, 2);
  write_le<uint16_t>(os, 16);
  os.write("data", 4);
  write_le<uint32_t>(os, data_bytes);
  for (double s : clip.samples) {
    const double c = std::clamp(s, -1.0, 1.0);
    const double scaled = std::round(c * 32768.0);
    const int16_t q = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    write_le<int16_t>(os, q);
  }
  if (!os) throw std::runtime_error("wav: write failed for " + path);
}

TrimResult trim_silence(const AudioClip& clip, double threshold_db, double window_ms) {
  TrimResult res;
  res.clip.sample_rate = clip.sample_rate;
  const size_t n = clip.samples.size();
  if (n == 0) {
    res.fully_silent = true;
    return res;
  }
  double peak = 0.0;
  for (double s : clip.samples) peak = std::max(peak, std::abs(s));
  if (peak <= 0.0) {
    res.fully_silent = true;
    return res;
  }
  const size_t win = std::max<size_t>(
      1, static_cast<size_t>(std::lround(window_ms * 1e-3 * clip.sample_rate)));
  const double thresh = peak * std::pow(10.0, threshold_db / 20.0);
  auto window_rms = [&](size_t start) {
    const size_t end = std::min(n, start + win);
    double acc = 0.0;
    for (size_t i = start; i < end; ++i) acc += clip.samples[i] * clip.samples[i];
    return std::sqrt(acc / static_cast<double>(end - start));
  };
  size_t lead = 0;
  while (lead + win <= n && window_rms(lead) < thresh) lead += win;
  size_t tail = n;
  while (tail >= lead + win && window_rms(tail - win) < thresh) tail -= win;
  if (lead >= tail) {
    res.fully_silent = true;
    return res;
  }
  res.clip.samples.assign(clip.samples.begin() + static_cast<ptrdiff_t>(lead),
                          clip.samples.begin() + static_cast<ptrdiff_t>(tail));
  return res;
}

std::vector<AudioClip> make_toy_corpus(int n_utts, double duration_s, int sample_rate,
                                       uint64_t seed) {
  if (sample_rate != 4000 && sample_rate != 8000 && sample_rate != 16000 && sample_rate != 24000)
    throw std::invalid_argument("toy corpus: sample rate must be one of 4000/8000/16000/24000");
  std::vector<AudioClip> clips;
  clips.reserve(n_utts);
  Rng rng(seed);
  const int64_t n = static_cast<int64_t>(std::llround(duration_s * sample_rate));
  for (int u = 0; u < n_utts; ++u) {
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.samples.resize(n);
    const double f0_base = rng.uniform(100.0, 260.0);
    const double f0_dev = rng.uniform(5.0, std::min(40.0, std::min(f0_base - 80.0, 300.0 - f0_base)));
    const double f0_rate = rng.uniform(0.5, 3.0);   // Hz, vibrato-like contour
    const double env_rate = rng.uniform(1.0, 4.0);  // Hz, slow amplitude modulation
    const double env_phase = rng.uniform(0.0, 2.0 * M_PI);
    const int n_harm = 1 + static_cast<int>(rng.uniform_index(5));
    double phase = rng.uniform(0.0, 2.0 * M_PI);
    double sig_power = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / sample_rate;
      const double f0 = f0_base + f0_dev * std::sin(2.0 * M_PI * f0_rate * t);
      phase += 2.0 * M_PI * f0 / sample_rate;
      double s = 0.0;
      for (int h = 1; h <= n_harm; ++h) {
        const double fh = f0 * h;
        if (fh >= sample_rate / 2.0) break;
        s += std::sin(phase * h) / h;
      }
      const double env = 0.55 + 0.45 * std::sin(2.0 * M_PI * env_rate * t + env_phase);
      clip.samples[i] = s * env;
      sig_power += clip.samples[i] * clip.samples[i];
    }
    const double sig_rms = std::sqrt(sig_power / static_cast<double>(n));
    const double noise_rms = sig_rms * std::pow(10.0, -30.0 / 20.0);
    for (int64_t i = 0; i < n; ++i) clip.samples[i] += noise_rms * rng.normal();
    double peak = 0.0;
    for (double s : clip.samples) peak = std::max(peak, std::abs(s));
    const double scale = peak > 0.0 ? 0.9 / peak : 0.0;
    for (double& s : clip.samples) s *= scale;
    clips.push_back(std::move(clip));
  }
  return clips;
}

}  // namespace pddforge
