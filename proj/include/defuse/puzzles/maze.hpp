#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

inline constexpr int kMazeSize = 6;

enum class SphereColor : std::uint8_t { green, blue, red, yellow };
enum class Heading : std::uint8_t { north, east, south, west };

std::string_view sphere_color_name(SphereColor c);
std::optional<SphereColor> parse_sphere_color(std::string_view s);
std::string_view heading_name(Heading h);
std::optional<Heading> parse_heading(std::string_view s);

/// Torus color -> color of the accepting sphere.
SphereColor maze_accepting_color(SphereColor torus);

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Sphere {
  SphereColor color;
  Cell cell;
};

using MazeWalls = std::array<std::array<bool, kMazeSize>, kMazeSize>;

/// BFS distance between cells over passable squares; -1 when unreachable.
int maze_distance(const MazeWalls& walls, Cell from, Cell to);

/// Shortest move/turn token sequence from (from, heading) to `to`, ending
/// with press_button. Empty when unreachable.
std::vector<std::string> maze_route(const MazeWalls& walls, Cell from, Heading heading, Cell to);

struct MazeState {
  MazeWalls walls{};
  Cell mouse;
  Heading heading = Heading::north;
  SphereColor torus = SphereColor::green;
  std::array<Sphere, 4> spheres{};
  int initial_distance = 0;
  int best_distance = 0;
  bool solved = false;

  Cell accepting_cell() const;
  int distance_to_goal() const;
};

/// One move/turn/press. Blocked moves are silent no-ops.
StepResult maze_step(MazeState& s, std::string_view token);

MazeState generate_maze(Rng& rng, const GenParams& params);
bool validate(const MazeState& s);
std::vector<std::string> actions(const MazeState& s);
StepResult apply(MazeState& s, std::string_view token, int clock);
double progress(const MazeState& s);
std::vector<std::string> oracle_plan(const MazeState& s, int clock, int decrement);
ordered_json to_json(const MazeState& s);

} // namespace defuse
