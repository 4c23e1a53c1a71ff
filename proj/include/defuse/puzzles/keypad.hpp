#pragma once

#include <span>

#include "defuse/puzzles/common.hpp"

namespace defuse {

inline constexpr int kGlyphCount = 27;
inline constexpr int kKeypadColumns = 6;
inline constexpr int kKeypadColumnLength = 7;

/// Stable glyph names, index = glyph id.
const std::array<std::string_view, kGlyphCount>& glyph_names();
std::optional<int> parse_glyph(std::string_view name);

using KeypadColumn = std::array<int, kKeypadColumnLength>;

struct KeypadState {
  std::array<int, 4> grid{}; // glyph ids at top-left, top-right, bottom-left, bottom-right
  std::array<KeypadColumn, kKeypadColumns> columns{};
  int entered = 0; // correct presses in the current entry
  int best_entered = 0;
  bool solved = false;
};

/// Indices of the manual columns that contain every grid symbol.
std::vector<int> keypad_qualifying_columns(std::span<const int> grid, std::span<const KeypadColumn> columns);

/// The grid's symbols in qualifying-column order. Throws RuleError unless
/// exactly one column qualifies.
std::vector<int> keypad_solution(std::span<const int> grid, std::span<const KeypadColumn> columns);

std::string keypad_press_token(int glyph);

KeypadState generate_keypad(Rng& rng, const GenParams& params);
bool validate(const KeypadState& s);
std::vector<std::string> actions(const KeypadState& s);
StepResult apply(KeypadState& s, std::string_view token, int clock);
double progress(const KeypadState& s);
std::vector<std::string> oracle_plan(const KeypadState& s, int clock, int decrement);
ordered_json to_json(const KeypadState& s);

} // namespace defuse
