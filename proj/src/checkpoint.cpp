#include "pddforge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace pddforge::ck {

namespace {

void put_u32(std::ostream& os, uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

uint32_t get_u32(std::istream& is) {
  uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 4)) throw std::runtime_error("checkpoint: truncated file");
  return v;
}

}  // namespace

void write(const std::string& path, uint32_t kind, std::span<const uint32_t> spec,
           const std::vector<ParamRecord>& params) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + tmp + " for writing");
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, kind);
    put_u32(os, static_cast<uint32_t>(spec.size()));
    for (uint32_t v : spec) put_u32(os, v);
    put_u32(os, static_cast<uint32_t>(params.size()));
    for (const auto& p : params) {
      put_u32(os, static_cast<uint32_t>(p.name.size()));
      os.write(p.name.data(), static_cast<std::streamsize>(p.name.size()));
      put_u32(os, static_cast<uint32_t>(p.dims.size()));
      for (int64_t d : p.dims) put_u32(os, static_cast<uint32_t>(d));
      os.write(reinterpret_cast<const char*>(p.data.data()),
               static_cast<std::streamsize>(p.data.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("checkpoint: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

File read(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  File f;
  f.version = get_u32(is);
  if (f.version != kVersion)
    throw std::runtime_error("checkpoint: unsupported format version " + std::to_string(f.version));
  f.kind = get_u32(is);
  const uint32_t nspec = get_u32(is);
  f.spec.resize(nspec);
  for (auto& v : f.spec) v = get_u32(is);
  const uint32_t nparams = get_u32(is);
  f.params.resize(nparams);
  for (auto& p : f.params) {
    const uint32_t nlen = get_u32(is);
    p.name.resize(nlen);
    if (!is.read(p.name.data(), nlen)) throw std::runtime_error("checkpoint: truncated file");
    const uint32_t rank = get_u32(is);
    p.dims.resize(rank);
    int64_t numel = 1;
    for (auto& d : p.dims) {
      d = get_u32(is);
      numel *= d;
    }
    p.data.resize(numel);
    if (!is.read(reinterpret_cast<char*>(p.data.data()),
                 static_cast<std::streamsize>(numel * sizeof(double))))
      throw std::runtime_error("checkpoint: truncated file");
  }
  return f;
}

std::vector<ParamRecord> to_records(const ParamList& params) {
  std::vector<ParamRecord> out;
  out.reserve(params.size());
  for (const auto& p : params) out.push_back({p.name, p.tensor.shape(), p.tensor.values()});
  return out;
}

void load_into(const std::vector<ParamRecord>& records, ParamList& params) {
  std::unordered_map<std::string, const ParamRecord*> by_name;
  for (const auto& r : records) by_name[r.name] = &r;
  for (auto& p : params) {
    auto it = by_name.find(p.name);
    if (it == by_name.end()) throw std::runtime_error("checkpoint: missing parameter " + p.name);
    const ParamRecord& r = *it->second;
    if (r.dims != p.tensor.shape())
      throw std::runtime_error("checkpoint: shape mismatch for " + p.name + ": " +
                               shape_str(r.dims) + " vs " + shape_str(p.tensor.shape()));
    p.tensor.mutable_values() = r.data;
  }
}

uint64_t fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t param_checksum(const ParamRecord& r) {
  return fnv1a64({reinterpret_cast<const uint8_t*>(r.data.data()), r.data.size() * sizeof(double)});
}

}  // namespace pddforge::ck
