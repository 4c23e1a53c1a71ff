#include "defuse/puzzles/keypad.hpp"

#include <algorithm>

#include "defuse/error.hpp"

namespace defuse {

const std::array<std::string_view, kGlyphCount>& glyph_names() {
  static constexpr std::array<std::string_view, kGlyphCount> names = {
      "balloon",     "at",        "lambda",      "lightning", "squid",        "hook",      "backward_c",
      "euro",        "curly_q",   "hollow_star", "question",  "copyright",    "pumpkin",   "double_k",
      "melted_three", "six",      "paragraph",   "bt",        "smiley",       "pitchfork", "c_dot",
      "dragon",      "filled_star", "track",     "ae",        "n_hat",        "omega"};
  return names;
}

std::optional<int> parse_glyph(std::string_view name) {
  const auto& names = glyph_names();
  for (int i = 0; i < kGlyphCount; ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

std::vector<int> keypad_qualifying_columns(std::span<const int> grid, std::span<const KeypadColumn> columns) {
  std::vector<int> out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& col = columns[c];
    const bool all = std::all_of(grid.begin(), grid.end(),
                                 [&](int g) { return std::find(col.begin(), col.end(), g) != col.end(); });
    if (all) out.push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<int> keypad_solution(std::span<const int> grid, std::span<const KeypadColumn> columns) {
  const auto qualifying = keypad_qualifying_columns(grid, columns);
  if (qualifying.size() != 1)
    throw RuleError("expected exactly one qualifying column, found " + std::to_string(qualifying.size()));
  const auto& col = columns[qualifying.front()];
  std::vector<int> order(grid.begin(), grid.end());
  auto rank = [&](int g) { return std::find(col.begin(), col.end(), g) - col.begin(); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rank(a) < rank(b); });
  return order;
}

std::string keypad_press_token(int glyph) { return "press_symbol_" + std::string(glyph_names().at(glyph)); }

KeypadState generate_keypad(Rng& rng, const GenParams&) {
  KeypadState s;
  for (auto& col : s.columns) {
    const auto picks = rng.sample(kGlyphCount, kKeypadColumnLength);
    std::copy(picks.begin(), picks.end(), col.begin());
  }
  const auto& chosen = s.columns[rng.below(kKeypadColumns)];
  const auto rows = rng.sample(kKeypadColumnLength, 4);
  for (int i = 0; i < 4; ++i) s.grid[i] = chosen[rows[i]];
  return s;
}

bool validate(const KeypadState& s) {
  for (const auto& col : s.columns)
    for (std::size_t i = 0; i < col.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (col[i] == col[j]) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      if (s.grid[i] == s.grid[j]) return false;
  return keypad_qualifying_columns(s.grid, s.columns).size() == 1;
}

std::vector<std::string> actions(const KeypadState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int g : s.grid) out.push_back(keypad_press_token(g));
  return out;
}

StepResult apply(KeypadState& s, std::string_view token, int) {
  const int pos = index_of(actions(s), token);
  if (pos < 0) return {OutcomeKind::noop, "action not available"};
  const auto order = keypad_solution(s.grid, s.columns);
  const int glyph = s.grid[pos];
  const std::string name(glyph_names()[glyph]);
  if (order[s.entered] == glyph) {
    ++s.entered;
    s.best_entered = std::max(s.best_entered, s.entered);
    if (s.entered == 4) {
      s.solved = true;
      return {OutcomeKind::solved, "pressed " + name};
    }
    return {OutcomeKind::correct, "pressed " + name};
  }
  const bool discarded = s.entered > 0;
  s.entered = 0;
  return {discarded ? OutcomeKind::reset : OutcomeKind::mistake, "pressed " + name + ": wrong order, entry cleared"};
}

double progress(const KeypadState& s) { return 25.0 * s.best_entered; }

std::vector<std::string> oracle_plan(const KeypadState& s, int, int) {
  std::vector<std::string> plan;
  if (s.solved) return plan;
  const auto order = keypad_solution(s.grid, s.columns);
  for (std::size_t i = static_cast<std::size_t>(s.entered); i < order.size(); ++i)
    plan.push_back(keypad_press_token(order[i]));
  return plan;
}

ordered_json to_json(const KeypadState& s) {
  ordered_json cols = ordered_json::array();
  for (const auto& c : s.columns) cols.push_back(c);
  return {{"grid", s.grid},
          {"columns", cols},
          {"entered", s.entered},
          {"best_entered", s.best_entered},
          {"solved", s.solved}};
}

} // namespace defuse
