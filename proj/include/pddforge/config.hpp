#pragma once

#include <cstdint>
#include <string>

#include "pddforge/losses.hpp"

namespace pddforge {

enum class Scale { desk, paper };

// Three contiguous phases: generator-only warmup with the adversarial weight
// forced to zero, discriminator-only pretraining, then alternating joint
// updates. Generator steps total warmup + joint.
struct Schedule {
  int64_t warmup_steps = 200;
  int64_t disc_pretrain_steps = 50;
  int64_t joint_steps = 300;
  double lr_g_init = 1e-4;
  double lr_d_init = 5e-5;
  int64_t halve_every = 200;

  int64_t generator_steps() const { return warmup_steps + joint_steps; }
  void validate() const;
};

struct TrainConfig {
  std::string preset = "KLAXAD";
  LossWeights weights = LossWeights::preset("KLAXAD");
  int64_t batch_size = 8;
  int64_t clip_len = 600;
  uint64_t seed = 0;
  int sample_rate = 8000;
  Scale scale = Scale::desk;
  Schedule schedule;
  double lambda_reg = 4.0;
  int64_t checkpoint_every = 0;  // 0: only at the end
  std::string corpus_manifest;
  std::string out_dir;

  // teacher-training keys
  int64_t teacher_steps = 500;
  double lr_teacher = 1e-3;
  int64_t teacher_clip_len = 600;
  int64_t teacher_halve_every = 200000;
  int64_t eval_every = 100;

  // Flat key=value file; '#' starts a comment. Unknown keys are rejected.
  static TrainConfig from_file(const std::string& path);
  void apply_kv(const std::string& key, const std::string& value);
  void set_preset(const std::string& name);
  void validate() const;
  std::string describe() const;
};

}  // namespace pddforge
