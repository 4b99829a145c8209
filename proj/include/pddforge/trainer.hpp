#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pddforge/adam.hpp"
#include "pddforge/config.hpp"
#include "pddforge/data.hpp"
#include "pddforge/discriminator.hpp"
#include "pddforge/losses.hpp"
#include "pddforge/student.hpp"
#include "pddforge/teacher.hpp"

namespace pddforge {

// Maximum-likelihood training of the autoregressive density model on random
// conditioned crops.
class TeacherTrainer {
 public:
  TeacherTrainer(TrainConfig cfg, std::shared_ptr<Dataset> data);

  struct LogRow {
    int64_t step = 0;
    double nll = 0, lr = 0;
  };

  void run();             // all steps, with CSV logs and checkpoints under out_dir
  bool step();            // one optimization step; false once finished
  double dev_nll() const; // mean held-out NLL (prefix-limited for cost)

  Teacher& teacher() { return *teacher_; }
  const std::vector<LogRow>& log() const { return log_; }
  double initial_dev_nll() const { return initial_dev_nll_; }
  int64_t steps_done() const { return steps_done_; }
  void save(const std::string& path) const;

 private:
  TrainConfig cfg_;
  std::shared_ptr<Dataset> data_;
  std::unique_ptr<Teacher> teacher_;
  AdamState adam_;
  Rng rng_;
  int64_t steps_done_ = 0;
  double initial_dev_nll_ = 0;
  std::vector<LogRow> log_;
};

enum class Phase { warmup, disc, joint, done };
const char* phase_name(Phase p);

// Distillation driver: warmup -> discriminator pretrain -> joint adversarial
// training, with one discriminator update followed by one generator update
// per joint iteration. The teacher is frozen throughout.
class DistillTrainer {
 public:
  DistillTrainer(TrainConfig cfg, const std::string& teacher_path, std::shared_ptr<Dataset> data,
                 bool resume = false);

  Phase phase() const;        // phase of the next iteration
  int64_t iteration() const { return iteration_; }
  int64_t total_iterations() const;
  bool step();                // one iteration; false once finished
  void run();                 // remaining iterations + logging/checkpoints

  double dev_aux(uint64_t eval_seed) const;

  Student& student() { return *student_; }
  Discriminator& discriminator() { return *disc_; }
  Teacher& teacher() { return *teacher_; }
  const std::vector<LossReport>& reports() const { return reports_; }
  const TrainConfig& config() const { return cfg_; }
  int64_t generator_steps_done() const { return gen_steps_; }
  int64_t disc_steps_done() const { return disc_steps_; }

  void save_checkpoint() const;  // student.pddf / discriminator.pddf / trainer_state.bin

 private:
  void gen_step(bool mask_adv, LossReport& report);
  void disc_step(LossReport& report);
  void load_state(const std::string& path);
  void save_state(const std::string& path) const;

  TrainConfig cfg_;
  std::shared_ptr<Dataset> data_;
  std::unique_ptr<Teacher> teacher_;
  std::unique_ptr<Student> student_;
  std::unique_ptr<Discriminator> disc_;
  ParamList student_params_, disc_params_;
  AdamState adam_g_, adam_d_;
  Rng rng_;
  StftConfig stft_cfg_;
  int64_t iteration_ = 0, gen_steps_ = 0, disc_steps_ = 0;
  int64_t disc_phase_steps_ = 0;  // 0 when the adversarial weight is zero
  std::vector<LossReport> reports_;
  int64_t resume_row_offset_ = 0;
};

struct EvalRow {
  std::string clip;
  double l_sc = 0, l_mag = 0, teacher_nll = 0, rtf_student = 0, rtf_teacher = 0;
};

// Per-eval-clip objective metrics plus an aggregate row; also written as CSV
// when out_csv is non-empty.
std::vector<EvalRow> evaluate(const std::string& student_path, const std::string& teacher_path,
                              const std::string& manifest_path, const std::string& out_csv,
                              uint64_t seed);

struct BenchRow {
  std::string system;       // "teacher" or "student"
  int64_t t_len = 0;
  double wall_s = 0;
  double samples_per_s = 0;
  int64_t units = 0;        // teacher: loop iterations; student: network passes
  double speedup = 0;       // on student rows, teacher wall / student wall
};

std::vector<BenchRow> bench_generation(const Teacher& teacher, const Student& student,
                                       const std::vector<int64_t>& lengths, uint64_t seed);
std::vector<BenchRow> bench_generation_files(const std::string& teacher_path,
                                             const std::string& student_path,
                                             const std::vector<int64_t>& lengths,
                                             const std::string& out_csv, uint64_t seed);

}  // namespace pddforge
