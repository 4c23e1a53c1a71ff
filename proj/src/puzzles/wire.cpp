#include "defuse/puzzles/wire.hpp"

#include <algorithm>

#include "defuse/error.hpp"

namespace defuse {

std::string_view wire_color_name(WireColor c) {
  switch (c) {
  case WireColor::red: return "red";
  case WireColor::blue: return "blue";
  case WireColor::yellow: return "yellow";
  case WireColor::white: return "white";
  case WireColor::black: return "black";
  }
  return "?";
}

std::optional<WireColor> parse_wire_color(std::string_view s) {
  for (auto c : kWireColors)
    if (wire_color_name(c) == s) return c;
  return std::nullopt;
}

int wire_to_cut(std::span<const WireColor> colors, int serial_last_digit) {
  const int n = static_cast<int>(colors.size());
  auto count = [&](WireColor c) { return static_cast<int>(std::count(colors.begin(), colors.end(), c)); };
  auto last_of = [&](WireColor c) {
    for (int i = n - 1; i >= 0; --i)
      if (colors[i] == c) return i + 1;
    return 0;
  };
  const bool odd = serial_last_digit % 2 == 1;
  const WireColor last = n > 0 ? colors[n - 1] : WireColor::red;

  switch (n) {
  case 3:
    if (count(WireColor::red) == 0) return 2;
    if (last == WireColor::white) return 3;
    if (count(WireColor::blue) > 1) return last_of(WireColor::blue);
    return 3;
  case 4:
    if (count(WireColor::red) > 1 && odd) return last_of(WireColor::red);
    if (last == WireColor::yellow && count(WireColor::red) == 0) return 1;
    if (count(WireColor::blue) == 1) return 1;
    if (count(WireColor::yellow) > 1) return 4;
    return 2;
  case 5:
    if (last == WireColor::black && odd) return 4;
    if (count(WireColor::red) == 1 && count(WireColor::yellow) > 1) return 1;
    if (count(WireColor::black) == 0) return 2;
    return 1;
  case 6:
    if (count(WireColor::yellow) == 0 && odd) return 3;
    if (count(WireColor::yellow) == 1 && count(WireColor::white) > 1) return 4;
    if (count(WireColor::red) == 0) return 6;
    return 4;
  default:
    throw RuleError("wire count must be 3-6, got " + std::to_string(n));
  }
}

WireState generate_wire(Rng& rng, const GenParams&) {
  WireState s;
  const int n = rng.uniform(3, 6);
  for (int i = 0; i < n; ++i) s.wires.push_back(kWireColors[rng.below(kWireColors.size())]);
  static constexpr std::string_view kSerialChars = "ABCDEFGHJKLMNPQRSTUVWXZ0123456789";
  for (int i = 0; i < 5; ++i) s.serial += kSerialChars[rng.below(kSerialChars.size())];
  s.serial += static_cast<char>('0' + rng.below(10));
  s.cut.assign(n, false);
  return s;
}

bool validate(const WireState& s) {
  const auto n = s.wires.size();
  return n >= 3 && n <= 6 && s.cut.size() == n && !s.serial.empty() && s.serial.back() >= '0' &&
         s.serial.back() <= '9';
}

std::vector<std::string> actions(const WireState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (std::size_t i = 0; i < s.wires.size(); ++i)
    if (!s.cut[i]) out.push_back("cut_wire_" + std::to_string(i + 1));
  return out;
}

StepResult apply(WireState& s, std::string_view token, int) {
  const int k = index_of(actions(s), token);
  if (k < 0) return {OutcomeKind::noop, "action not available"};
  const int index = std::stoi(std::string(token.substr(9)));
  s.cut[index - 1] = true;
  if (index == wire_to_cut(s.wires, s.serial_last_digit())) {
    s.solved = true;
    return {OutcomeKind::solved, "cut wire " + std::to_string(index)};
  }
  return {OutcomeKind::mistake, "cut wire " + std::to_string(index) + ": wrong wire"};
}

double progress(const WireState& s) { return s.solved ? 100.0 : 0.0; }

std::vector<std::string> oracle_plan(const WireState& s, int, int) {
  if (s.solved) return {};
  return {"cut_wire_" + std::to_string(wire_to_cut(s.wires, s.serial_last_digit()))};
}

ordered_json to_json(const WireState& s) {
  ordered_json wires = ordered_json::array();
  for (auto c : s.wires) wires.push_back(wire_color_name(c));
  return {{"wires", wires}, {"serial", s.serial}, {"cut", s.cut}, {"solved", s.solved}};
}

} // namespace defuse
