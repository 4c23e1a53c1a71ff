#include "defuse/puzzles/color.hpp"

#include <algorithm>

#include "defuse/error.hpp"

namespace defuse {

namespace {

constexpr std::array<ColorCell, 5> kPlainColors = {ColorCell::red, ColorCell::blue, ColorCell::green,
                                                   ColorCell::yellow, ColorCell::magenta};

constexpr int kMaxStages = 15;
constexpr int kRecolorTries = 1000;

using G = GroupKey;

// Rows: white count 1..15. Columns: previously pressed Red, Blue, Green, Yellow, Magenta, Row, Column.
constexpr std::array<std::array<GroupKey, 7>, 15> kNextGroup = {{
    {G::blue, G::column, G::red, G::yellow, G::row, G::green, G::magenta},
    {G::row, G::green, G::blue, G::magenta, G::red, G::column, G::yellow},
    {G::yellow, G::magenta, G::green, G::row, G::blue, G::red, G::column},
    {G::blue, G::green, G::yellow, G::column, G::red, G::row, G::magenta},
    {G::yellow, G::row, G::blue, G::magenta, G::column, G::red, G::green},
    {G::magenta, G::red, G::yellow, G::green, G::column, G::blue, G::row},
    {G::green, G::row, G::column, G::blue, G::magenta, G::yellow, G::red},
    {G::magenta, G::red, G::green, G::blue, G::yellow, G::column, G::row},
    {G::column, G::yellow, G::red, G::green, G::row, G::magenta, G::blue},
    {G::green, G::column, G::row, G::red, G::magenta, G::blue, G::yellow},
    {G::red, G::yellow, G::row, G::column, G::green, G::magenta, G::blue},
    {G::column, G::row, G::column, G::row, G::row, G::column, G::row},
    {G::row, G::column, G::row, G::column, G::row, G::column, G::column},
    {G::column, G::column, G::row, G::row, G::column, G::row, G::column},
    {G::row, G::row, G::column, G::row, G::column, G::column, G::row},
}};

void begin_stage(ColorState& s, GroupKey key) {
  s.stage_key = key;
  s.stage_cells = color_group_cells(s.grid, key);
}

bool is_plain(GroupKey k) { return k != G::row && k != G::column; }

} // namespace

std::string_view color_cell_name(ColorCell c) {
  switch (c) {
  case ColorCell::red: return "red";
  case ColorCell::blue: return "blue";
  case ColorCell::green: return "green";
  case ColorCell::yellow: return "yellow";
  case ColorCell::magenta: return "magenta";
  case ColorCell::white: return "white";
  }
  return "?";
}

std::optional<ColorCell> parse_color_cell(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(ColorCell::white); ++i)
    if (color_cell_name(static_cast<ColorCell>(i)) == s) return static_cast<ColorCell>(i);
  return std::nullopt;
}

std::string_view group_key_name(GroupKey k) {
  switch (k) {
  case G::row: return "row";
  case G::column: return "column";
  default: return color_cell_name(static_cast<ColorCell>(k));
  }
}

std::optional<GroupKey> parse_group_key(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(G::column); ++i)
    if (group_key_name(static_cast<GroupKey>(i)) == s) return static_cast<GroupKey>(i);
  return std::nullopt;
}

int color_white_count(const ColorGrid& grid) {
  return static_cast<int>(std::count(grid.begin(), grid.end(), ColorCell::white));
}

ColorCell color_fewest_group(const ColorGrid& grid) {
  std::optional<ColorCell> best;
  int best_count = kColorCells + 1;
  for (auto c : kPlainColors) {
    const int n = static_cast<int>(std::count(grid.begin(), grid.end(), c));
    if (n > 0 && n < best_count) {
      best = c;
      best_count = n;
    }
  }
  if (!best) throw RuleError("all squares are white");
  return *best;
}

GroupKey color_next_group(int white_count, GroupKey prev) {
  if (white_count < 1 || white_count > 15)
    throw RuleError("no table row for " + std::to_string(white_count) + " white squares");
  return kNextGroup[white_count - 1][static_cast<std::size_t>(prev)];
}

std::vector<int> color_row_col_group(const ColorGrid& grid, GroupKey which) {
  if (which != G::row && which != G::column) throw RuleError("row/column group expects Row or Column");
  for (int line = 0; line < kColorSide; ++line) {
    std::vector<int> cells;
    for (int k = 0; k < kColorSide; ++k) {
      const int cell = which == G::row ? line * kColorSide + k : k * kColorSide + line;
      if (grid[cell] != ColorCell::white) cells.push_back(cell);
    }
    if (!cells.empty()) {
      std::sort(cells.begin(), cells.end());
      return cells;
    }
  }
  throw RuleError("all squares are white");
}

std::vector<int> color_group_cells(const ColorGrid& grid, GroupKey key) {
  if (!is_plain(key)) return color_row_col_group(grid, key);
  std::vector<int> cells;
  for (int i = 0; i < kColorCells; ++i)
    if (grid[i] == static_cast<ColorCell>(key)) cells.push_back(i);
  return cells;
}

std::string color_press_token(int cell) {
  return "press_square_" + std::to_string(cell / kColorSide + 1) + "_" + std::to_string(cell % kColorSide + 1);
}

void color_reset(ColorState& s) {
  s.grid = s.initial_grid;
  s.stages_completed = 0;
  s.prev_key.reset();
  begin_stage(s, static_cast<GroupKey>(color_fewest_group(s.grid)));
}

namespace {

// Non-white squares take fresh colors after each stage; re-rolled until the
// designated next group has at least one square.
bool recolor(ColorState& s, GroupKey next) {
  for (int attempt = 0; attempt < kRecolorTries; ++attempt) {
    Rng rng(derive_seed(s.recolor_seed, {static_cast<std::uint64_t>(s.stages_completed),
                                         static_cast<std::uint64_t>(attempt)}));
    ColorGrid g = s.grid;
    for (auto& c : g)
      if (c != ColorCell::white) c = kPlainColors[rng.below(kPlainColors.size())];
    if (!color_group_cells(g, next).empty()) {
      s.grid = g;
      return true;
    }
  }
  return false;
}

StepResult press(ColorState& s, int cell) {
  const std::string token = color_press_token(cell);
  if (std::find(s.stage_cells.begin(), s.stage_cells.end(), cell) == s.stage_cells.end()) {
    const bool discarded = s.stages_completed > 0 || s.grid != s.initial_grid;
    color_reset(s);
    return {discarded ? OutcomeKind::reset : OutcomeKind::mistake, token + ": wrong square, module reset"};
  }
  s.grid[cell] = ColorCell::white;
  const int whites = color_white_count(s.grid);
  const bool stage_done = std::all_of(s.stage_cells.begin(), s.stage_cells.end(),
                                      [&](int c) { return s.grid[c] == ColorCell::white; });
  if (!stage_done) return {OutcomeKind::correct, token};
  s.max_white = std::max(s.max_white, whites);
  s.prev_key = s.stage_key;
  ++s.stages_completed;
  if (whites == kColorCells) {
    s.solved = true;
    s.stage_cells.clear();
    return {OutcomeKind::solved, token + ": all squares white"};
  }
  const GroupKey next = color_next_group(whites, *s.prev_key);
  if (!recolor(s, next)) throw GenerationError("color recoloring could not populate the next group");
  begin_stage(s, next);
  return {OutcomeKind::correct, token + ": stage complete"};
}

} // namespace

int color_solution_stages(const ColorState& s) {
  ColorState sim = s;
  color_reset(sim);
  while (!sim.solved && sim.stages_completed <= kColorCells) {
    const auto cells = sim.stage_cells;
    for (int c : cells) press(sim, c);
  }
  return sim.solved ? sim.stages_completed : -1;
}

ColorState generate_color(Rng& rng, const GenParams&) {
  ColorState s;
  for (auto& c : s.initial_grid) c = kPlainColors[rng.below(kPlainColors.size())];
  s.recolor_seed = rng.next();
  color_reset(s);
  return s;
}

bool validate(const ColorState& s) {
  if (color_white_count(s.initial_grid) != 0) return false;
  try {
    const int stages = color_solution_stages(s);
    return stages > 0 && stages <= kMaxStages;
  } catch (const GenerationError&) {
    return false;
  }
}

std::vector<std::string> actions(const ColorState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int i = 0; i < kColorCells; ++i)
    if (s.grid[i] != ColorCell::white) out.push_back(color_press_token(i));
  return out;
}

StepResult apply(ColorState& s, std::string_view token, int) {
  const auto avail = actions(s);
  if (index_of(avail, token) < 0) return {OutcomeKind::noop, "action not available"};
  const int r = token[13] - '1', c = token[15] - '1';
  return press(s, r * kColorSide + c);
}

double progress(const ColorState& s) { return 100.0 * s.max_white / kColorCells; }

std::vector<std::string> oracle_plan(const ColorState& s, int clock, int) {
  std::vector<std::string> plan;
  ColorState sim = s;
  while (!sim.solved) {
    const auto cells = sim.stage_cells;
    for (int c : cells) {
      plan.push_back(color_press_token(c));
      apply(sim, plan.back(), clock);
    }
  }
  return plan;
}

ordered_json to_json(const ColorState& s) {
  auto grid_json = [](const ColorGrid& g) {
    ordered_json out = ordered_json::array();
    for (auto c : g) out.push_back(color_cell_name(c));
    return out;
  };
  return {{"grid", grid_json(s.grid)},
          {"initial_grid", grid_json(s.initial_grid)},
          {"recolor_seed", s.recolor_seed},
          {"stage_key", group_key_name(s.stage_key)},
          {"prev_key", s.prev_key ? ordered_json(group_key_name(*s.prev_key)) : ordered_json(nullptr)},
          {"stage_cells", s.stage_cells},
          {"stages_completed", s.stages_completed},
          {"max_white", s.max_white},
          {"solved", s.solved}};
}

} // namespace defuse
