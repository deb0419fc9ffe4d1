#pragma once

#include <string_view>

namespace riccati::log {

enum class Level { Quiet = 0, Warn = 1, Info = 2 };

void set_level(Level level) noexcept;
Level level() noexcept;

void warn(std::string_view message);
void info(std::string_view message);

}  // namespace riccati::log
