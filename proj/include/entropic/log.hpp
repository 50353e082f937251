#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace entropic {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Level from ENTROPIC_LOG={error|info|debug}; default error.
inline LogLevel log_level() {
    const char* env = std::getenv("ENTROPIC_LOG");
    if (env == nullptr) return LogLevel::error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    return LogLevel::error;
}

inline void log_info(const char* msg) {
    if (log_level() >= LogLevel::info) std::fprintf(stderr, "[info] %s\n", msg);
}

inline void log_debug(const char* msg) {
    if (log_level() >= LogLevel::debug) std::fprintf(stderr, "[debug] %s\n", msg);
}

}  // namespace entropic
