#include "pddforge/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pddforge/common.hpp"

namespace pddforge {

void Schedule::validate() const {
  if (warmup_steps < 0 || disc_pretrain_steps < 0 || joint_steps < 0)
    throw UsageError("schedule: negative step counts");
  if (!(lr_g_init > 0.0) || !(lr_d_init > 0.0)) throw UsageError("schedule: learning rates must be positive");
  if (halve_every < 1) throw UsageError("schedule: halve_every must be positive");
}

namespace {

int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int64_t r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw UsageError("config: bad integer for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw UsageError("config: bad number for " + key + ": '" + v + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void TrainConfig::set_preset(const std::string& name) {
  const double reg = weights.lambda_reg;
  weights = LossWeights::preset(name);  // throws UsageError with the preset list
  weights.lambda_reg = reg;
  preset = name;
}

void TrainConfig::apply_kv(const std::string& key, const std::string& value) {
  if (key == "preset") set_preset(value);
  else if (key == "batch_size") batch_size = parse_int(key, value);
  else if (key == "clip_len") clip_len = parse_int(key, value);
  else if (key == "seed") seed = static_cast<uint64_t>(parse_int(key, value));
  else if (key == "sample_rate") sample_rate = static_cast<int>(parse_int(key, value));
  else if (key == "scale") {
    if (value == "desk") scale = Scale::desk;
    else if (value == "paper") scale = Scale::paper;
    else throw UsageError("config: scale must be desk or paper, got '" + value + "'");
  } else if (key == "steps_warmup") schedule.warmup_steps = parse_int(key, value);
  else if (key == "steps_disc") schedule.disc_pretrain_steps = parse_int(key, value);
  else if (key == "steps_joint") schedule.joint_steps = parse_int(key, value);
  else if (key == "lr_g") schedule.lr_g_init = parse_double(key, value);
  else if (key == "lr_d") schedule.lr_d_init = parse_double(key, value);
  else if (key == "halve_every") schedule.halve_every = parse_int(key, value);
  else if (key == "lambda_reg") {
    lambda_reg = parse_double(key, value);
    weights.lambda_reg = lambda_reg;
  } else if (key == "checkpoint_every") checkpoint_every = parse_int(key, value);
  else if (key == "corpus_manifest") corpus_manifest = value;
  else if (key == "out_dir") out_dir = value;
  else if (key == "teacher_steps") teacher_steps = parse_int(key, value);
  else if (key == "lr_teacher") lr_teacher = parse_double(key, value);
  else if (key == "teacher_clip_len") teacher_clip_len = parse_int(key, value);
  else if (key == "teacher_halve_every") teacher_halve_every = parse_int(key, value);
  else if (key == "eval_every") eval_every = parse_int(key, value);
  else throw UsageError("config: unknown key '" + key + "'");
}

TrainConfig TrainConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("config: cannot open " + path);
  TrainConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config: " + path + ":" + std::to_string(lineno) + ": expected key = value");
    cfg.apply_kv(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void TrainConfig::validate() const {
  weights.validate();
  schedule.validate();
  if (batch_size < 1) throw UsageError("config: batch_size must be positive");
  if (clip_len < 1 || teacher_clip_len < 1) throw UsageError("config: clip lengths must be positive");
  if (teacher_steps < 0) throw UsageError("config: teacher_steps must be non-negative");
  if (!(lr_teacher > 0.0)) throw UsageError("config: lr_teacher must be positive");
  if (checkpoint_every < 0) throw UsageError("config: checkpoint_every must be non-negative");
  if (eval_every < 1) throw UsageError("config: eval_every must be positive");
  const int expect_rate = scale == Scale::desk ? 8000 : 24000;
  if (sample_rate != expect_rate)
    throw UsageError("config: scale " + std::string(scale == Scale::desk ? "desk" : "paper") +
                     " runs at " + std::to_string(expect_rate) + " Hz, got sample_rate " +
                     std::to_string(sample_rate));
}

std::string TrainConfig::describe() const {
  std::ostringstream os;
  os << "preset = " << preset << "\n"
     << "lambda_kld = " << weights.kld << "\n"
     << "lambda_aux = " << weights.aux << "\n"
     << "lambda_adv = " << weights.adv << "\n"
     << "lambda_reg = " << weights.lambda_reg << "\n"
     << "batch_size = " << batch_size << "\n"
     << "clip_len = " << clip_len << "\n"
     << "seed = " << seed << "\n"
     << "sample_rate = " << sample_rate << "\n"
     << "scale = " << (scale == Scale::desk ? "desk" : "paper") << "\n"
     << "steps_warmup = " << schedule.warmup_steps << "\n"
     << "steps_disc = " << schedule.disc_pretrain_steps << "\n"
     << "steps_joint = " << schedule.joint_steps << "\n"
     << "lr_g = " << schedule.lr_g_init << "\n"
     << "lr_d = " << schedule.lr_d_init << "\n"
     << "halve_every = " << schedule.halve_every << "\n"
     << "checkpoint_every = " << checkpoint_every << "\n"
     << "teacher_steps = " << teacher_steps << "\n"
     << "lr_teacher = " << lr_teacher << "\n"
     << "teacher_clip_len = " << teacher_clip_len << "\n"
     << "teacher_halve_every = " << teacher_halve_every << "\n"
     << "eval_every = " << eval_every << "\n"
     << "corpus_manifest = " << corpus_manifest << "\n"
     << "out_dir = " << out_dir << "\n";
  return os.str();
}

}  // namespace pddforge
