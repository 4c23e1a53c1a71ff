#include "defuse/puzzle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defuse;

namespace {

std::vector<std::string> rows_of(const MazeWalls& w) {
  std::vector<std::string> out;
  for (const auto& r : w) {
    std::string line;
    for (bool wall : r) line += wall ? '#' : '.';
    out.push_back(line);
  }
  return out;
}

MazeState open_maze() {
  MazeState m;
  m.mouse = {2, 2};
  m.heading = Heading::north;
  m.torus = SphereColor::green;
  m.spheres = {{{SphereColor::blue, {0, 2}}, {SphereColor::red, {5, 5}}, {SphereColor::green, {5, 0}},
                {SphereColor::yellow, {0, 0}}}};
  m.initial_distance = 2;
  m.best_distance = 2;
  return m;
}

} // namespace

TEST_CASE("accepting sphere per torus color") {
  CHECK(maze_accepting_color(SphereColor::green) == SphereColor::blue);
  CHECK(maze_accepting_color(SphereColor::blue) == SphereColor::red);
  CHECK(maze_accepting_color(SphereColor::red) == SphereColor::green);
  CHECK(maze_accepting_color(SphereColor::yellow) == SphereColor::yellow);
}

TEST_CASE("maze moves, walls and turns") {
  auto m = open_maze();
  m.walls[1][2] = true;
  CHECK(maze_step(m, "move_forward").kind == OutcomeKind::noop);
  CHECK(m.mouse == Cell{2, 2});
  CHECK(maze_step(m, "turn_right").kind != OutcomeKind::mistake);
  CHECK(m.heading == Heading::east);
  maze_step(m, "move_forward");
  CHECK(m.mouse == Cell{2, 3});
  maze_step(m, "move_backward");
  CHECK(m.mouse == Cell{2, 2});
  maze_step(m, "turn_left");
  maze_step(m, "turn_left");
  CHECK(m.heading == Heading::west);
  m.mouse = {2, 0};
  CHECK(maze_step(m, "move_forward").kind == OutcomeKind::noop);
  CHECK(m.mouse == Cell{2, 0});
}

TEST_CASE("press_button solves only at the accepting sphere") {
  auto m = open_maze();
  CHECK(maze_step(m, "press_button").kind == OutcomeKind::mistake);
  CHECK_FALSE(m.solved);
  m.mouse = {0, 2};
  CHECK(maze_step(m, "press_button").kind == OutcomeKind::solved);
  CHECK(progress(m) == 100.0);
}

TEST_CASE("maze distance agrees with a plain BFS") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = generate(PuzzleId::maze, seed);
    const auto& m = std::get<MazeState>(s.data);
    const auto goal = m.accepting_cell();
    const auto rows = rows_of(m.walls);
    const int d = oracle::maze_bfs(rows, m.mouse.row, m.mouse.col, goal.row, goal.col);
    CHECK(d > 0);
    CHECK(m.distance_to_goal() == d);
    CHECK(m.initial_distance == d);
    for (const auto& sp : m.spheres) CHECK_FALSE(m.walls[static_cast<std::size_t>(sp.cell.row)][static_cast<std::size_t>(sp.cell.col)]);
  }
}

TEST_CASE("maze oracle route is shortest in moves and ends with press_button") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto s = generate(PuzzleId::maze, seed);
    const int d = std::get<MazeState>(s.data).initial_distance;
    const auto plan = oracle_actions(s, 600, 13);
    REQUIRE_FALSE(plan.empty());
    CHECK(plan.back() == "press_button");
    const auto moves = std::count_if(plan.begin(), plan.end(), [](const std::string& a) { return a.rfind("move_", 0) == 0; });
    CHECK(moves == d);
    double last = 0.0;
    for (const auto& a : plan) {
      CHECK(apply_token(s, a, 600).kind != OutcomeKind::mistake);
      CHECK(progress(s) >= last);
      last = progress(s);
    }
    CHECK(s.solved());
  }
}

TEST_CASE("maze route is empty when the goal is walled off") {
  MazeWalls w{};
  w[0][1] = w[1][0] = w[1][1] = true;
  CHECK(maze_distance(w, {0, 0}, {5, 5}) == -1);
  CHECK(maze_route(w, {0, 0}, Heading::north, {5, 5}).empty());
  CHECK(maze_distance(w, {2, 2}, {2, 2}) == 0);
}
