#include "defuse/error.hpp"
#include "defuse/puzzle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defuse;

namespace {

std::vector<WireColor> wires(std::initializer_list<const char*> names) {
  std::vector<WireColor> out;
  for (const auto* n : names) out.push_back(*parse_wire_color(n));
  return out;
}

std::vector<std::string> names(const std::vector<WireColor>& w) {
  std::vector<std::string> out;
  for (auto c : w) out.emplace_back(wire_color_name(c));
  return out;
}

} // namespace

TEST_CASE("wire rule examples") {
  CHECK(wire_to_cut(wires({"blue", "yellow", "white"}), 4) == 2);
  CHECK(wire_to_cut(wires({"blue", "yellow", "white"}), 5) == 2);
  CHECK(wire_to_cut(wires({"red", "blue", "white"}), 0) == 3);
  CHECK(wire_to_cut(wires({"red", "black", "red", "yellow", "black"}), 7) == 4);
  CHECK(wire_to_cut(wires({"red", "black", "red", "yellow", "black"}), 8) == 1);
}

TEST_CASE("wire rules outside 3..6 wires are undefined") {
  CHECK_THROWS_AS(wire_to_cut(wires({"red", "blue"}), 1), RuleError);
  CHECK_THROWS_AS(wire_to_cut(wires({"red", "red", "red", "red", "red", "red", "red"}), 1), RuleError);
}

TEST_CASE("wire rules agree with the reference for 3 and 4 wires") {
  for (int n = 3; n <= 4; ++n) {
    std::vector<WireColor> w(static_cast<std::size_t>(n));
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 5;
    for (int code = 0; code < total; ++code) {
      int c = code;
      for (auto& x : w) {
        x = kWireColors[static_cast<std::size_t>(c % 5)];
        c /= 5;
      }
      for (int digit : {2, 7}) REQUIRE(wire_to_cut(w, digit) == oracle::wire(names(w), digit % 2 == 1));
    }
  }
}

TEST_CASE("wire play: right cut solves, wrong cut is a mistake") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = generate(PuzzleId::wire, seed);
    const auto& w = std::get<WireState>(s.data);
    const int k = wire_to_cut(w.wires, w.serial_last_digit());
    CHECK(oracle_actions(s, 600, 13) == std::vector<std::string>{"cut_wire_" + std::to_string(k)});
    CHECK(available_actions(s).size() == w.wires.size());

    auto wrong = s;
    const int other = k == 1 ? 2 : 1;
    CHECK(apply_token(wrong, "cut_wire_" + std::to_string(other), 600).kind == OutcomeKind::mistake);
    CHECK(wrong.strikes == 1);
    CHECK_FALSE(wrong.solved());
    CHECK(progress(wrong) == 0.0);

    CHECK(apply_token(s, "cut_wire_" + std::to_string(k), 600).kind == OutcomeKind::solved);
    CHECK(progress(s) == 100.0);
  }
}

TEST_CASE("wire instances have a serial ending in a digit") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = generate(PuzzleId::wire, seed);
    const auto& w = std::get<WireState>(s.data);
    CHECK(w.wires.size() >= 3);
    CHECK(w.wires.size() <= 6);
    CHECK(std::isdigit(static_cast<unsigned char>(w.serial.back())));
  }
}
