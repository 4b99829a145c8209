#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pddforge/tensor.hpp"

namespace pddforge::ck {

inline constexpr char kMagic[4] = {'P', 'D', 'D', 'F'};
inline constexpr uint32_t kVersion = 1;

enum ModelKind : uint32_t {
  kTeacher = 1,
  kStudent = 2,
  kDiscriminator = 3,
  kFeatureStats = 4,
};

struct ParamRecord {
  std::string name;
  std::vector<int64_t> dims;
  std::vector<double> data;
};

struct File {
  uint32_t version = kVersion;
  uint32_t kind = 0;
  std::vector<uint32_t> spec;  // fixed field order per kind, little-endian on disk
  std::vector<ParamRecord> params;
};

// Layout: magic, version u32, kind u32, spec count u32 + fields, param count
// u32, then per-parameter records (name length u32, UTF-8 name, rank u32,
// dims u32 each, raw little-endian f64 data). Writes atomically (temp +
// rename).
void write(const std::string& path, uint32_t kind, std::span<const uint32_t> spec,
           const std::vector<ParamRecord>& params);
File read(const std::string& path);

std::vector<ParamRecord> to_records(const ParamList& params);
// Copies record data into the matching named parameters; throws on any
// missing name or shape mismatch.
void load_into(const std::vector<ParamRecord>& records, ParamList& params);

uint64_t fnv1a64(std::span<const uint8_t> bytes);
uint64_t param_checksum(const ParamRecord& r);

}  // namespace pddforge::ck
