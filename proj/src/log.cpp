#include "pddforge/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace pddforge::logging {

namespace {

Level parse_env() {
  const char* v = std::getenv("PDD_FORGE_LOG");
  if (!v) return Level::info;
  if (std::strcmp(v, "error") == 0) return Level::error;
  if (std::strcmp(v, "debug") == 0) return Level::debug;
  return Level::info;
}

Level g_level = parse_env();

}  // namespace

Level level() { return g_level; }
void set_level(Level lv) { g_level = lv; }

void log(Level lv, const std::string& msg) {
  if (static_cast<int>(lv) > static_cast<int>(g_level)) return;
  const char* tag = lv == Level::error ? "error" : (lv == Level::debug ? "debug" : "info");
  std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
  std::fflush(stderr);
}

}  // namespace pddforge::logging
