#pragma once

#include <span>

#include "defuse/puzzles/common.hpp"

namespace defuse {

enum class WireColor : std::uint8_t { red, blue, yellow, white, black };

inline constexpr std::array<WireColor, 5> kWireColors = {WireColor::red, WireColor::blue, WireColor::yellow,
                                                         WireColor::white, WireColor::black};

std::string_view wire_color_name(WireColor c);
std::optional<WireColor> parse_wire_color(std::string_view s);

struct WireState {
  std::vector<WireColor> wires; // top to bottom
  std::string serial;           // ends with a digit
  std::vector<bool> cut;
  bool solved = false;

  int serial_last_digit() const { return serial.back() - '0'; }
};

/// 1-based index of the wire to cut. Throws RuleError for counts outside 3..6.
int wire_to_cut(std::span<const WireColor> colors, int serial_last_digit);

WireState generate_wire(Rng& rng, const GenParams& params);
bool validate(const WireState& s);
std::vector<std::string> actions(const WireState& s);
StepResult apply(WireState& s, std::string_view token, int clock);
double progress(const WireState& s);
std::vector<std::string> oracle_plan(const WireState& s, int clock, int decrement);
ordered_json to_json(const WireState& s);

} // namespace defuse
