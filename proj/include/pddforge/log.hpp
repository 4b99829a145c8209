#pragma once

#include <string>

namespace pddforge::logging {

enum class Level { error = 0, info = 1, debug = 2 };

// Reads PDD_FORGE_LOG (error|info|debug) once; defaults to info.
Level level();
void set_level(Level lv);

void log(Level lv, const std::string& msg);

inline void error(const std::string& msg) { log(Level::error, msg); }
inline void info(const std::string& msg) { log(Level::info, msg); }
inline void debug(const std::string& msg) { log(Level::debug, msg); }

}  // namespace pddforge::logging
