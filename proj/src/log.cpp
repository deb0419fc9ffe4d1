#include "riccati/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace riccati::log {

namespace {
std::atomic<Level> g_level{Level::Warn};
std::mutex g_mutex;
}  // namespace

void set_level(Level level) noexcept { g_level.store(level); }
Level level() noexcept { return g_level.load(); }

void warn(std::string_view message) {
    if (g_level.load() < Level::Warn) return;
    std::lock_guard lock(g_mutex);
    std::clog << "[warn] " << message << '\n';
}

void info(std::string_view message) {
    if (g_level.load() < Level::Info) return;
    std::lock_guard lock(g_mutex);
    std::clog << "[info] " << message << '\n';
}

}  // namespace riccati::log
