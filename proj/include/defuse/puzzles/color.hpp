#pragma once

#include <optional>

#include "defuse/puzzles/common.hpp"

namespace defuse {

enum class ColorCell : std::uint8_t { red, blue, green, yellow, magenta, white };
/// Table column order.
enum class GroupKey : std::uint8_t { red, blue, green, yellow, magenta, row, column };

inline constexpr int kColorSide = 4;
inline constexpr int kColorCells = kColorSide * kColorSide;

using ColorGrid = std::array<ColorCell, kColorCells>; // row-major

std::string_view color_cell_name(ColorCell c);
std::optional<ColorCell> parse_color_cell(std::string_view s);
std::string_view group_key_name(GroupKey k);
std::optional<GroupKey> parse_group_key(std::string_view s);

int color_white_count(const ColorGrid& grid);

/// Least-populated non-white color present; ties go to the earlier color in
/// Red, Blue, Green, Yellow, Magenta. Throws RuleError on an all-white grid.
ColorCell color_fewest_group(const ColorGrid& grid);

/// Table lookup. Throws RuleError outside white counts 1..15.
GroupKey color_next_group(int white_count, GroupKey prev);

/// Non-white cells of the topmost (Row) or leftmost (Column) line that has any.
std::vector<int> color_row_col_group(const ColorGrid& grid, GroupKey which);

/// Cells belonging to a group key in the given grid.
std::vector<int> color_group_cells(const ColorGrid& grid, GroupKey key);

std::string color_press_token(int cell);

struct ColorState {
  ColorGrid grid{};
  ColorGrid initial_grid{};
  std::uint64_t recolor_seed = 0;
  GroupKey stage_key = GroupKey::red;
  std::optional<GroupKey> prev_key;
  std::vector<int> stage_cells; // designated group, fixed at stage start
  int stages_completed = 0;     // since the last reset
  int max_white = 0; // white count at the best completed stage
  bool solved = false;
};

/// Starts a fresh attempt from the initial board.
void color_reset(ColorState& s);

/// Number of stages the correct path takes from the initial board.
int color_solution_stages(const ColorState& s);

ColorState generate_color(Rng& rng, const GenParams& params);
bool validate(const ColorState& s);
std::vector<std::string> actions(const ColorState& s);
StepResult apply(ColorState& s, std::string_view token, int clock);
double progress(const ColorState& s);
std::vector<std::string> oracle_plan(const ColorState& s, int clock, int decrement);
ordered_json to_json(const ColorState& s);

} // namespace defuse
