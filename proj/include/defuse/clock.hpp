#pragma once

#include <string>
#include <string_view>

namespace defuse {

/// "m:ss" display of a countdown value in seconds (600 -> "10:00").
std::string format_clock(int seconds);

/// True iff `digit` appears anywhere among the displayed digits.
bool timer_has_digit(std::string_view display, int digit);

/// Last displayed digit of an "m:ss" string.
int timer_last_digit(std::string_view display);

} // namespace defuse
