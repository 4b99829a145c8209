#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pddforge/audio.hpp"
#include "pddforge/mel.hpp"
#include "pddforge/rng.hpp"

namespace pddforge {

enum class Split { train, dev, eval };

struct ManifestEntry {
  std::string path;
  Split split = Split::train;
};

// One tab-separated line per clip: <path>\t<train|dev|eval>. Relative paths
// resolve against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::string& path);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::string& path);

// A waveform/feature pair ready for a training graph: the waveform is
// truncated to n_frames * hop so the upsampled conditioning aligns exactly.
struct TrainItem {
  std::vector<double> wave;
  MelSpectrogram mel;  // normalized
};

class Dataset {
 public:
  Dataset(const std::string& manifest_path, int expected_sample_rate, int n_mels = 80,
          double frame_ms = 25.0, double shift_ms = 5.0);

  const std::vector<AudioClip>& split(Split s) const;
  const FeatureStats& stats() const { return stats_; }

  // Uniform utterance and uniform start-offset crop from the train split.
  TrainItem sample_crop(Rng& rng, int64_t crop_len) const;
  // Whole-clip features (optionally truncated to max_len samples first).
  TrainItem features_for(const AudioClip& clip, int64_t max_len = 0) const;

  int sample_rate = 0;
  int n_mels = 80;
  double frame_ms = 25.0, shift_ms = 5.0;
  int64_t hop = 0;
  int64_t frame_samples = 0;

 private:
  std::vector<AudioClip> train_, dev_, eval_;
  FeatureStats stats_;
};

}  // namespace pddforge
