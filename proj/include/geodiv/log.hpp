#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace geodiv {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Parsed once from GEODIV_LOG in {error, info, debug}; defaults to error.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("GEODIV_LOG");
        if (env) {
            const std::string v(env);
            if (v == "debug") return LogLevel::Debug;
            if (v == "info") return LogLevel::Info;
        }
        return LogLevel::Error;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(LogLevel::Info))
        std::fprintf(stderr, "[geodiv] %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
    if (static_cast<int>(log_level()) >= static_cast<int>(LogLevel::Debug))
        std::fprintf(stderr, "[geodiv:debug] %s\n", msg.c_str());
}

}  // namespace geodiv
