#include "pddforge/data.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pddforge/log.hpp"

namespace pddforge {

namespace fs = std::filesystem;

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("manifest: cannot open " + path);
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("manifest: " + path + ":" + std::to_string(lineno) +
                               ": expected <path>\\t<split>");
    ManifestEntry e;
    std::string p = line.substr(0, tab);
    const std::string tag = line.substr(tab + 1);
    if (tag == "train") e.split = Split::train;
    else if (tag == "dev") e.split = Split::dev;
    else if (tag == "eval") e.split = Split::eval;
    else
      throw std::runtime_error("manifest: " + path + ":" + std::to_string(lineno) +
                               ": unknown split '" + tag + "'");
    e.path = fs::path(p).is_absolute() ? p : (base / p).string();
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("manifest: cannot open " + path + " for writing");
  for (const auto& e : entries) {
    const char* tag = e.split == Split::train ? "train" : (e.split == Split::dev ? "dev" : "eval");
    os << e.path << '\t' << tag << '\n';
  }
}

Dataset::Dataset(const std::string& manifest_path, int expected_sample_rate, int n_mels_in,
                 double frame_ms_in, double shift_ms_in) {
  sample_rate = expected_sample_rate;
  n_mels = n_mels_in;
  frame_ms = frame_ms_in;
  shift_ms = shift_ms_in;
  hop = static_cast<int64_t>(std::llround(shift_ms * 1e-3 * sample_rate));
  frame_samples = static_cast<int64_t>(std::llround(frame_ms * 1e-3 * sample_rate));
  const auto entries = read_manifest(manifest_path);
  for (const auto& e : entries) {
    AudioClip clip = read_wav(e.path);
    if (clip.sample_rate != sample_rate)
      throw std::runtime_error("dataset: " + e.path + " has sample rate " +
                               std::to_string(clip.sample_rate) + ", expected " +
                               std::to_string(sample_rate));
    if (static_cast<int64_t>(clip.samples.size()) < frame_samples)
      throw std::runtime_error("dataset: " + e.path + " is shorter than one analysis frame");
    (e.split == Split::train ? train_ : e.split == Split::dev ? dev_ : eval_)
        .push_back(std::move(clip));
  }
  if (train_.empty()) throw std::runtime_error("dataset: empty train split in " + manifest_path);
  std::vector<MelSpectrogram> mels;
  mels.reserve(train_.size());
  for (const auto& c : train_) mels.push_back(log_mel(c, n_mels, frame_ms, shift_ms));
  stats_ = compute_stats(mels);
  logging::debug("dataset: " + std::to_string(train_.size()) + " train / " +
                 std::to_string(dev_.size()) + " dev / " + std::to_string(eval_.size()) +
                 " eval clips");
}

const std::vector<AudioClip>& Dataset::split(Split s) const {
  return s == Split::train ? train_ : (s == Split::dev ? dev_ : eval_);
}

TrainItem Dataset::features_for(const AudioClip& clip, int64_t max_len) const {
  AudioClip cut;
  cut.sample_rate = clip.sample_rate;
  const int64_t n = static_cast<int64_t>(clip.samples.size());
  const int64_t take = max_len > 0 ? std::min(max_len, n) : n;
  cut.samples.assign(clip.samples.begin(), clip.samples.begin() + take);
  MelSpectrogram mel = log_mel(cut, n_mels, frame_ms, shift_ms);
  TrainItem item;
  item.mel = normalize(mel, stats_);
  const int64_t usable = mel.n_frames * hop;
  item.wave.assign(cut.samples.begin(), cut.samples.begin() + std::min(usable, take));
  if (static_cast<int64_t>(item.wave.size()) < usable)
    item.wave.resize(usable, 0.0);  // hop tail beyond the last full frame window
  return item;
}

TrainItem Dataset::sample_crop(Rng& rng, int64_t crop_len) const {
  if (crop_len < frame_samples)
    throw std::invalid_argument("dataset: crop of " + std::to_string(crop_len) +
                                " samples is shorter than one analysis frame");
  const auto& clip = train_[rng.uniform_index(train_.size())];
  const int64_t n = static_cast<int64_t>(clip.samples.size());
  const int64_t usable = std::min(crop_len, n);
  const int64_t start = static_cast<int64_t>(rng.uniform_index(n - usable + 1));
  AudioClip crop;
  crop.sample_rate = clip.sample_rate;
  crop.samples.assign(clip.samples.begin() + start, clip.samples.begin() + start + usable);
  return features_for(crop);
}

}  // namespace pddforge
