#include "defuse/clock.hpp"

#include <cctype>
#include <stdexcept>

namespace defuse {

std::string format_clock(int seconds) {
  if (seconds < 0) seconds = 0;
  const int m = seconds / 60;
  const int s = seconds % 60;
  std::string out = std::to_string(m);
  out += ':';
  out += static_cast<char>('0' + s / 10);
  out += static_cast<char>('0' + s % 10);
  return out;
}

bool timer_has_digit(std::string_view display, int digit) {
  const char want = static_cast<char>('0' + digit);
  for (char c : display)
    if (c == want) return true;
  return false;
}

int timer_last_digit(std::string_view display) {
  for (auto it = display.rbegin(); it != display.rend(); ++it)
    if (std::isdigit(static_cast<unsigned char>(*it))) return *it - '0';
  throw std::invalid_argument("clock display has no digits");
}

} // namespace defuse
