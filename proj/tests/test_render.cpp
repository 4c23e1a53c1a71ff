#include <functional>
#include <set>

#include "defuse/agents.hpp"
#include "defuse/render.hpp"
#include "doctest.h"

using namespace defuse;

namespace {

bool has_key(const ordered_json& j, const std::string& key) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k == key || has_key(v, key)) return true;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (has_key(v, key)) return true;
  }
  return false;
}

int components(const RenderedImage& img, Rgb color) {
  std::vector<char> seen(static_cast<std::size_t>(img.width * img.height), 0);
  int n = 0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      if (seen[static_cast<std::size_t>(y * img.width + x)] || !(img.at(x, y) == color)) continue;
      ++n;
      std::vector<std::pair<int, int>> stack{{x, y}};
      seen[static_cast<std::size_t>(y * img.width + x)] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (auto [nx, ny] : {std::pair{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}, {cx + 1, cy + 1},
                              {cx - 1, cy - 1}, {cx + 1, cy - 1}, {cx - 1, cy + 1}}) {
          if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
          auto& s = seen[static_cast<std::size_t>(ny * img.width + nx)];
          if (s || !(img.at(nx, ny) == color)) continue;
          s = 1;
          stack.push_back({nx, ny});
        }
      }
    }
  return n;
}

const std::map<std::string, Rgb>& palette() {
  static const std::map<std::string, Rgb> p = {{"red", {210, 40, 40}},      {"blue", {40, 80, 210}},
                                               {"green", {40, 170, 60}},    {"yellow", {235, 205, 30}},
                                               {"white", {245, 245, 240}}, {"black", {15, 15, 15}}};
  return p;
}

} // namespace

TEST_CASE("rendering is byte-deterministic") {
  for (auto id : kAllPuzzles) {
    const auto s = generate(id, 17);
    const auto a = encode_png(render_image(s, 587));
    const auto b = encode_png(render_image(generate(id, 17), 587));
    CHECK(a == b);
    const auto img = render_image(s, 587);
    CHECK(img.width == kImageSize);
    CHECK(img.height == kImageSize);
    CHECK(decode_png(a).rgb == img.rgb);
  }
}

TEST_CASE("wires are drawn top to bottom in order") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = generate(PuzzleId::wire, seed);
    const auto& w = std::get<WireState>(s.data);
    const auto img = render_image(s, 600);
    auto name_at = [&](int y) {
      for (const auto& [name, rgb] : palette())
        if (img.at(250, y) == rgb) return name;
      return std::string();
    };
    // Each wire is a band of palette pixels (outline included); read its middle row.
    std::vector<std::string> seen;
    for (int y = 100; y < 470; ++y) {
      if (name_at(y).empty()) continue;
      int end = y;
      while (end + 1 < 470 && !name_at(end + 1).empty()) ++end;
      seen.push_back(name_at((y + end) / 2));
      y = end;
    }
    std::vector<std::string> expect;
    for (auto c : w.wires) expect.emplace_back(wire_color_name(c));
    std::string got;
    for (const auto& x : seen) got += x + " ";
    INFO("seed ", seed, " saw ", got);
    CHECK(seen == expect);
  }
}

TEST_CASE("dog picture holds exactly n dog sprites") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto s = generate(PuzzleId::dog, seed);
    const auto img = render_image(s, 600);
    const int n = std::get<DogState>(s.data).n_dogs;
    CHECK(components(img, kDogFur) == n);
    CHECK(count_dogs(img) == n);
  }
}

TEST_CASE("maze image shows the torus and four spheres") {
  constexpr int ox = 76, oy = 40, cell = 60;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = generate(PuzzleId::maze, seed);
    const auto& m = std::get<MazeState>(s.data);
    const auto img = render_image(s, 600);
    for (const auto& sp : m.spheres) {
      const int cx = ox + sp.cell.col * cell + cell / 2, cy = oy + sp.cell.row * cell + cell / 2;
      CHECK(img.at(cx, cy) == palette().at(std::string(sphere_color_name(sp.color))));
    }
    const Rgb torus = palette().at(std::string(sphere_color_name(m.torus)));
    int hits = 0;
    const int mid = 3 * cell;
    for (int y = -22; y <= 22; ++y)
      for (int x = -22; x <= 22; ++x) hits += img.at(ox + mid + x, oy + mid + y) == torus;
    CHECK(hits > 50);
  }
}

TEST_CASE("solver views never carry solution fields") {
  for (auto id : kAllPuzzles)
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto v = solver_view(generate(id, seed), 600);
      CHECK(v.at("puzzle") == std::string(puzzle_name(id)));
      for (const auto& key : solution_only_fields()) CHECK_FALSE(has_key(v, key));
    }
}

TEST_CASE("view contents per puzzle") {
  const auto led = generate(PuzzleId::led, 3);
  const auto lv = solver_view(led, 600).dump();
  for (char ch : std::get<LedState>(led.data).letters[0]) CHECK(lv.find(std::string("\"") + ch + "\"") != std::string::npos);
  CHECK(lv.find(std::string(led_color_name(std::get<LedState>(led.data).colors[0]))) != std::string::npos);

  const auto pw = generate(PuzzleId::password, 3);
  const auto pv = solver_view(pw, 600);
  int letters = 0;
  for (const auto& e : pv.at("visible_elements")) letters += e.at("kind") == "letter";
  CHECK(letters == 5);

  const auto who = generate(PuzzleId::who, 3);
  const auto wv = solver_view(who, 600);
  int buttons = 0;
  for (const auto& e : wv.at("visible_elements")) buttons += e.at("kind") == "button";
  CHECK(buttons == 6);
  CHECK(wv.dump().find("display") != std::string::npos);

  const auto button = generate(PuzzleId::button, 3);
  const bool hidden =
      solver_view(button, 600).dump().find(std::string(strip_color_name(std::get<ButtonState>(button.data).strip_color))) ==
          std::string::npos ||
      std::get<ButtonState>(button.data).strip_color == StripColor::yellow;
  CHECK(hidden);
}

TEST_CASE("descriptions mention every element kind") {
  for (auto id : kAllPuzzles) {
    const auto text = describe_view(solver_view(generate(id, 5), 587));
    CHECK(text.find("Puzzle:") != std::string::npos);
    CHECK(text.find("Clock: 9:47") != std::string::npos);
  }
  const auto wire = generate(PuzzleId::wire, 5);
  const auto text = describe_view(solver_view(wire, 600));
  CHECK(text.find(std::get<WireState>(wire.data).serial) != std::string::npos);
}

TEST_CASE("manual text") {
  CHECK(manual_text(PuzzleId::wire).find("The WirePuzzle module can have 3-6 wires") != std::string::npos);
  const auto mem = manual_text(PuzzleId::memory);
  for (int st = 1; st <= 5; ++st) CHECK(mem.find("Stage " + std::to_string(st)) != std::string::npos);
  const auto keypad = generate(PuzzleId::keypad, 7);
  const auto text = manual_text(PuzzleId::keypad, &keypad);
  const auto& k = std::get<KeypadState>(keypad.data);
  for (int c = 0; c < kKeypadColumns; ++c) {
    std::string line = "Column " + std::to_string(c + 1) + ": ";
    for (std::size_t i = 0; i < kKeypadColumnLength; ++i) {
      if (i) line += ", ";
      line += glyph_names()[static_cast<std::size_t>(k.columns[static_cast<std::size_t>(c)][i])];
    }
    CHECK(text.find(line) != std::string::npos);
  }
  for (auto id : kAllPuzzles) CHECK_FALSE(manual_text(id).empty());
  CHECK(prompt_text(Role::solver).find("expert") != std::string::npos);
  CHECK_FALSE(prompt_text(Role::expert).empty());
}
