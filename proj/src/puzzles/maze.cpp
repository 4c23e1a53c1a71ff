#include "defuse/puzzles/maze.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

namespace defuse {

namespace {

constexpr std::array<SphereColor, 4> kSphereColors = {SphereColor::green, SphereColor::blue, SphereColor::red,
                                                      SphereColor::yellow};
constexpr std::array<int, 4> kDr = {-1, 0, 1, 0}; // indexed by Heading
constexpr std::array<int, 4> kDc = {0, 1, 0, -1};

bool in_bounds(int r, int c) { return r >= 0 && r < kMazeSize && c >= 0 && c < kMazeSize; }

bool open(const MazeWalls& walls, int r, int c) { return in_bounds(r, c) && !walls[r][c]; }

Heading turn(Heading h, int delta) { return static_cast<Heading>((static_cast<int>(h) + delta + 4) % 4); }

} // namespace

std::string_view sphere_color_name(SphereColor c) {
  switch (c) {
  case SphereColor::green: return "green";
  case SphereColor::blue: return "blue";
  case SphereColor::red: return "red";
  case SphereColor::yellow: return "yellow";
  }
  return "?";
}

std::optional<SphereColor> parse_sphere_color(std::string_view s) {
  for (auto c : kSphereColors)
    if (sphere_color_name(c) == s) return c;
  return std::nullopt;
}

std::string_view heading_name(Heading h) {
  switch (h) {
  case Heading::north: return "north";
  case Heading::east: return "east";
  case Heading::south: return "south";
  case Heading::west: return "west";
  }
  return "?";
}

std::optional<Heading> parse_heading(std::string_view s) {
  for (int i = 0; i < 4; ++i)
    if (heading_name(static_cast<Heading>(i)) == s) return static_cast<Heading>(i);
  return std::nullopt;
}

SphereColor maze_accepting_color(SphereColor torus) {
  switch (torus) {
  case SphereColor::green: return SphereColor::blue;
  case SphereColor::blue: return SphereColor::red;
  case SphereColor::red: return SphereColor::green;
  case SphereColor::yellow: return SphereColor::yellow;
  }
  return torus;
}

int maze_distance(const MazeWalls& walls, Cell from, Cell to) {
  if (!open(walls, from.row, from.col) || !open(walls, to.row, to.col)) return -1;
  std::array<std::array<int, kMazeSize>, kMazeSize> dist;
  for (auto& row : dist) row.fill(-1);
  std::deque<Cell> queue{from};
  dist[from.row][from.col] = 0;
  while (!queue.empty()) {
    const Cell at = queue.front();
    queue.pop_front();
    if (at == to) return dist[at.row][at.col];
    for (int d = 0; d < 4; ++d) {
      const int r = at.row + kDr[d], c = at.col + kDc[d];
      if (open(walls, r, c) && dist[r][c] < 0) {
        dist[r][c] = dist[at.row][at.col] + 1;
        queue.push_back({r, c});
      }
    }
  }
  return -1;
}

std::vector<std::string> maze_route(const MazeWalls& walls, Cell from, Heading heading, Cell to) {
  // Dijkstra over (cell, heading), minimizing moves first and turns second so
  // the move count always equals the BFS distance.
  using Cost = std::pair<int, int>;
  constexpr Cost kInf = {std::numeric_limits<int>::max(), 0};
  auto id = [](int r, int c, int h) { return (r * kMazeSize + c) * 4 + h; };
  constexpr int kStates = kMazeSize * kMazeSize * 4;
  std::array<Cost, kStates> best;
  best.fill(kInf);
  std::array<int, kStates> parent;
  parent.fill(-1);
  std::array<std::string_view, kStates> via{};

  using Item = std::tuple<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  const int start = id(from.row, from.col, static_cast<int>(heading));
  best[start] = {0, 0};
  frontier.push({best[start], start});
  int goal = -1;
  while (!frontier.empty()) {
    auto [cost, s] = frontier.top();
    frontier.pop();
    if (cost > best[s]) continue;
    const int h = s % 4, cell = s / 4, r = cell / kMazeSize, c = cell % kMazeSize;
    if (r == to.row && c == to.col) {
      goal = s;
      break;
    }
    auto relax = [&](int next, Cost nc, std::string_view token) {
      if (nc < best[next]) {
        best[next] = nc;
        parent[next] = s;
        via[next] = token;
        frontier.push({nc, next});
      }
    };
    relax(id(r, c, (h + 3) % 4), {cost.first, cost.second + 1}, "turn_left");
    relax(id(r, c, (h + 1) % 4), {cost.first, cost.second + 1}, "turn_right");
    if (open(walls, r + kDr[h], c + kDc[h])) relax(id(r + kDr[h], c + kDc[h], h), {cost.first + 1, cost.second}, "move_forward");
    if (open(walls, r - kDr[h], c - kDc[h])) relax(id(r - kDr[h], c - kDc[h], h), {cost.first + 1, cost.second}, "move_backward");
  }
  if (goal < 0) return {};
  std::vector<std::string> tokens;
  for (int s = goal; s != start; s = parent[s]) tokens.emplace_back(via[s]);
  std::reverse(tokens.begin(), tokens.end());
  tokens.emplace_back("press_button");
  return tokens;
}

Cell MazeState::accepting_cell() const {
  const SphereColor want = maze_accepting_color(torus);
  for (const auto& s : spheres)
    if (s.color == want) return s.cell;
  return spheres.front().cell;
}

int MazeState::distance_to_goal() const { return maze_distance(walls, mouse, accepting_cell()); }

StepResult maze_step(MazeState& s, std::string_view token) {
  const int h = static_cast<int>(s.heading);
  if (token == "turn_left" || token == "turn_right") {
    s.heading = turn(s.heading, token == "turn_left" ? -1 : 1);
    return {OutcomeKind::correct, "now facing " + std::string(heading_name(s.heading))};
  }
  if (token == "move_forward" || token == "move_backward") {
    const int sign = token == "move_forward" ? 1 : -1;
    const int r = s.mouse.row + sign * kDr[h], c = s.mouse.col + sign * kDc[h];
    if (!open(s.walls, r, c)) return {OutcomeKind::noop, "blocked by a wall"};
    s.mouse = {r, c};
    s.best_distance = std::min(s.best_distance, s.distance_to_goal());
    return {OutcomeKind::correct, "moved to row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1)};
  }
  if (token == "press_button") {
    if (s.mouse == s.accepting_cell()) {
      s.solved = true;
      s.best_distance = 0;
      return {OutcomeKind::solved, "pressed at the accepting sphere"};
    }
    return {OutcomeKind::mistake, "pressed away from the accepting sphere"};
  }
  return {OutcomeKind::noop, "action not available"};
}

MazeState generate_maze(Rng& rng, const GenParams&) {
  MazeState s;
  for (auto& row : s.walls)
    for (auto& w : row) w = rng.chance(3, 10);
  std::vector<int> free;
  for (int i = 0; i < kMazeSize * kMazeSize; ++i)
    if (!s.walls[i / kMazeSize][i % kMazeSize]) free.push_back(i);
  if (free.size() < 5) return s; // rejected by validate
  const auto picks = rng.sample(static_cast<int>(free.size()), 5);
  auto cell_at = [&](int k) { return Cell{free[picks[k]] / kMazeSize, free[picks[k]] % kMazeSize}; };
  s.mouse = cell_at(0);
  s.heading = static_cast<Heading>(rng.below(4));
  for (int i = 0; i < 4; ++i) s.spheres[i] = {kSphereColors[i], cell_at(i + 1)};
  s.torus = kSphereColors[rng.below(4)];
  s.initial_distance = s.best_distance = s.distance_to_goal();
  return s;
}

bool validate(const MazeState& s) {
  auto passable = [&](Cell c) { return open(s.walls, c.row, c.col); };
  if (!passable(s.mouse)) return false;
  for (std::size_t i = 0; i < s.spheres.size(); ++i) {
    if (!passable(s.spheres[i].cell) || s.spheres[i].cell == s.mouse) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (s.spheres[i].cell == s.spheres[j].cell || s.spheres[i].color == s.spheres[j].color) return false;
  }
  const int d = s.distance_to_goal();
  return d >= 4 && d == s.initial_distance;
}

std::vector<std::string> actions(const MazeState& s) {
  if (s.solved) return {};
  return {"move_forward", "move_backward", "turn_left", "turn_right", "press_button"};
}

StepResult apply(MazeState& s, std::string_view token, int) {
  if (s.solved) return {OutcomeKind::noop, "action not available"};
  return maze_step(s, token);
}

double progress(const MazeState& s) {
  if (s.solved) return 100.0;
  return 100.0 * (1.0 - static_cast<double>(s.best_distance) / s.initial_distance);
}

std::vector<std::string> oracle_plan(const MazeState& s, int, int) {
  if (s.solved) return {};
  return maze_route(s.walls, s.mouse, s.heading, s.accepting_cell());
}

ordered_json to_json(const MazeState& s) {
  ordered_json rows = ordered_json::array(), spheres = ordered_json::array();
  for (const auto& row : s.walls) {
    std::string line;
    for (bool w : row) line += w ? '#' : '.';
    rows.push_back(line);
  }
  for (const auto& sp : s.spheres) spheres.push_back({sphere_color_name(sp.color), sp.cell.row, sp.cell.col});
  return {{"walls", rows},
          {"mouse", {s.mouse.row, s.mouse.col}},
          {"heading", heading_name(s.heading)},
          {"torus", sphere_color_name(s.torus)},
          {"spheres", spheres},
          {"initial_distance", s.initial_distance},
          {"best_distance", s.best_distance},
          {"solved", s.solved}};
}

} // namespace defuse
