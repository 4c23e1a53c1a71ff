#include <algorithm>
#include <sstream>

#include "defuse/agents.hpp"
#include "defuse/clock.hpp"
#include "defuse/error.hpp"

namespace defuse {

namespace {

constexpr std::string_view kDescribeAgain = "describe the module again";
constexpr std::string_view kReleasePrefix = "release when the timer has a ";
constexpr std::string_view kSubmitPrefix = "submit when the last digit of the timer is ";
constexpr std::string_view kPressEvery = "press every ";
constexpr std::string_view kTopRow = "press every non-white square in the topmost row that has one";
constexpr std::string_view kLeftColumn = "press every non-white square in the leftmost column that has one";

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    const auto b = line.find_first_not_of(' ');
    out.push_back(b == std::string::npos ? "" : line.substr(b));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& p : out) {
    const auto b = p.find_first_not_of(' '), e = p.find_last_not_of(' ');
    p = b == std::string::npos ? "" : p.substr(b, e - b + 1);
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

const ChatMessage* last_from(const std::vector<ChatMessage>& h, Role role) {
  for (auto it = h.rbegin(); it != h.rend(); ++it)
    if (it->role == role) return &*it;
  return nullptr;
}

/// "Key: value" lines of a solver description, plus the bare action lines.
struct Described {
  std::map<std::string, std::string> fields;
  std::vector<std::string> actions;

  bool has(const std::string& k) const { return fields.count(k) > 0; }
  const std::string& at(const std::string& k) const {
    auto it = fields.find(k);
    if (it == fields.end()) throw AgentError("description lacks " + k);
    return it->second;
  }
};

Described parse_description(std::string_view text) {
  Described d;
  for (const auto& line : split_lines(text)) {
    if (line.empty()) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      d.actions.push_back(line);
      continue;
    }
    d.fields[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return d;
}

std::string join_lines(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

ColorGrid grid_from_view(const ordered_json& view) {
  ColorGrid g{};
  for (const auto& e : view.at("visible_elements")) {
    if (e.at("kind") != "square") continue;
    const int cell = (e.at("row").get<int>() - 1) * kColorSide + e.at("column").get<int>() - 1;
    g[cell] = *parse_color_cell(e.at("color").get<std::string>());
  }
  return g;
}

ColorGrid grid_from_description(const Described& d) {
  ColorGrid g{};
  for (int r = 0; r < kColorSide; ++r) {
    const auto cells = split(d.at("Row " + std::to_string(r + 1)), ' ');
    if (cells.size() != static_cast<std::size_t>(kColorSide)) throw AgentError("bad color row");
    for (int c = 0; c < kColorSide; ++c) {
      const auto col = parse_color_cell(cells[c]);
      if (!col) throw AgentError("unknown color " + cells[c]);
      g[r * kColorSide + c] = *col;
    }
  }
  return g;
}

std::string group_instruction(GroupKey k) {
  if (k == GroupKey::row) return std::string(kTopRow);
  if (k == GroupKey::column) return std::string(kLeftColumn);
  return std::string(kPressEvery) + std::string(group_key_name(k)) + " square";
}

std::optional<GroupKey> instructed_group(std::string_view text) {
  if (text == kTopRow) return GroupKey::row;
  if (text == kLeftColumn) return GroupKey::column;
  if (starts_with(text, kPressEvery) && text.size() > kPressEvery.size() + 7)
    return parse_group_key(text.substr(kPressEvery.size(), text.size() - kPressEvery.size() - 7));
  return std::nullopt;
}

/// Presses made per memory stage, rebuilt from each stage description and the reply to it.
std::map<int, MemoryPress> memory_presses(const std::vector<ChatMessage>& history) {
  std::map<int, MemoryPress> out;
  std::optional<std::pair<int, std::vector<std::string>>> pending;
  for (const auto& m : history) {
    if (m.role == Role::solver) {
      const Described d = parse_description(m.text);
      pending.reset();
      if (d.actions.empty() && d.has("Stage") && d.has("Buttons left to right"))
        pending = {std::stoi(d.at("Stage")), split(d.at("Buttons left to right"), ',')};
      continue;
    }
    if (!pending) continue;
    for (int p = 1; p <= static_cast<int>(pending->second.size()); ++p)
      if (m.text == memory_press_token(p)) {
        for (auto it = out.lower_bound(pending->first); it != out.end();) it = out.erase(it);
        out[pending->first] = {p, std::stoi(pending->second.at(static_cast<std::size_t>(p - 1)))};
      }
    pending.reset();
  }
  return out;
}

} // namespace

int count_dogs(const RenderedImage& img) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(img.width) * img.height, 0);
  int count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const auto idx = static_cast<std::size_t>(y) * img.width + x;
      if (seen[idx] || !(img.at(x, y) == kDogFur)) continue;
      ++count;
      stack.push_back({x, y});
      seen[idx] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
            const auto n = static_cast<std::size_t>(ny) * img.width + nx;
            if (seen[n] || !(img.at(nx, ny) == kDogFur)) continue;
            seen[n] = 1;
            stack.push_back({nx, ny});
          }
      }
    }
  return count;
}

std::string OracleSolver::next_message(const DialogueContext& ctx) {
  const SolverObservation& obs = *ctx.solver;
  std::vector<std::string> out;
  if (const auto* advice = last_from(ctx.history, Role::expert)) {
    for (const auto& line : split_lines(advice->text)) {
      if (line.empty()) continue;
      if (index_of(obs.actions, line) >= 0) {
        out.push_back(line);
      } else if (starts_with(line, kReleasePrefix) || starts_with(line, kSubmitPrefix)) {
        pending_ = line;
      } else if (line == kTopRow || line == kLeftColumn) {
        const auto cells = color_row_col_group(grid_from_view(obs.view), line == kTopRow ? GroupKey::row : GroupKey::column);
        for (int c : cells) out.push_back(color_press_token(c));
      } else if (starts_with(line, kPressEvery) && line.size() > kPressEvery.size() + 7) {
        const auto color = parse_color_cell(line.substr(kPressEvery.size(), line.size() - kPressEvery.size() - 7));
        if (color) {
          const auto grid = grid_from_view(obs.view);
          for (int c = 0; c < kColorCells; ++c)
            if (grid[c] == *color) out.push_back(color_press_token(c));
        }
      }
    }
  }
  if (out.empty() && !pending_.empty()) {
    const bool release = starts_with(pending_, kReleasePrefix);
    const auto& prefix = release ? kReleasePrefix : kSubmitPrefix;
    const int digit = pending_[prefix.size()] - '0';
    const bool now = release ? timer_has_digit(obs.clock_display, digit) : timer_last_digit(obs.clock_display) == digit;
    out.emplace_back(now ? (release ? "release" : "submit") : std::string(kWaitToken));
  }
  std::string msg = join_lines(out);
  msg += describe_view(obs.view);
  if (obs.puzzle == PuzzleId::dog) {
    msg += "Dogs in the picture: ";
    msg += obs.png.empty() ? "unknown" : std::to_string(count_dogs(decode_png(obs.png)));
    msg += "\n";
  }
  return msg;
}

namespace {

std::string expert_button(const Described& d) {
  if (d.at("Holding") == "no") {
    if (std::find(d.actions.begin(), d.actions.end(), "hold") != d.actions.end()) return std::string(kDescribeAgain);
    return "hold";
  }
  const std::string& strip = d.at("Strip");
  for (int i = 0; i < 5; ++i) {
    const auto c = static_cast<StripColor>(i);
    if (strip_color_name(c) == strip)
      return std::string(kReleasePrefix) + std::to_string(button_release_digit(c)) + " in any position";
  }
  return std::string(kDescribeAgain);
}

std::string expert_dog(const Described& d) {
  const auto& n = d.at("Dogs in the picture");
  if (n.size() != 1 || n[0] < '0' || n[0] > '9') return std::string(kDescribeAgain);
  return std::string(kSubmitPrefix) + n;
}

std::string expert_wire(const Described& d) {
  std::vector<WireColor> wires;
  for (auto w : split(d.at("Wires top to bottom"), ',')) {
    if (const auto sp = w.find(' '); sp != std::string::npos) w = w.substr(0, sp);
    const auto c = parse_wire_color(w);
    if (!c) throw AgentError("unknown wire color " + w);
    wires.push_back(*c);
  }
  const auto& serial = d.at("Serial number");
  return "cut_wire_" + std::to_string(wire_to_cut(wires, serial.back() - '0'));
}

std::string expert_who(const Described& d) {
  std::string display = d.at("Display");
  if (display == "(empty)") display = "(No Text)";
  std::array<std::string, kWhoButtons> labels;
  for (int p = 0; p < kWhoButtons; ++p)
    labels[p] = d.at("Button " + std::string(who_position_name(static_cast<WhoPosition>(p))));
  const auto ref = labels[static_cast<int>(who_step1(display))];
  const auto target = who_step2(ref, labels);
  for (int p = 0; p < kWhoButtons; ++p)
    if (labels[p] == target) return who_press_token(static_cast<WhoPosition>(p));
  throw AgentError("target label not on module");
}

std::string expert_keypad(const Described& d, const std::string& manual) {
  std::vector<KeypadColumn> columns;
  for (const auto& line : split_lines(manual)) {
    if (!starts_with(line, "Column ")) continue;
    const auto names = split(line.substr(line.find(": ") + 2), ',');
    KeypadColumn col{};
    for (int i = 0; i < kKeypadColumnLength; ++i) col[i] = parse_glyph(names.at(i)).value();
    columns.push_back(col);
  }
  static constexpr std::string_view pos[] = {"top left", "top right", "bottom left", "bottom right"};
  std::vector<int> grid;
  for (auto p : pos) {
    const auto g = parse_glyph(d.at("Symbol " + std::string(p)));
    if (!g) throw AgentError("unknown symbol");
    grid.push_back(*g);
  }
  std::vector<std::string> out;
  for (int g : keypad_solution(grid, columns)) out.push_back(keypad_press_token(g));
  return join_lines(out);
}

std::string expert_led(const Described& d) {
  if (!d.actions.empty()) return std::string(kDescribeAgain);
  const int stage = std::stoi(d.at("Stage"));
  const auto leds = split(d.at("LEDs left to right"), ',');
  const auto color = parse_led_color(leds.at(stage - 1));
  if (!color) throw AgentError("unknown LED color");
  LedLetters letters{};
  for (int p = 0; p < 4; ++p) letters[p] = d.at("Button " + std::string(kLedPositionNames[p])).at(0);
  const auto correct = led_correct_buttons(letters, led_multiplier(*color));
  if (correct.empty()) throw AgentError("no correct LED button");
  return led_press_token(correct.front());
}

} // namespace

std::string OracleExpert::next_message(const DialogueContext& ctx) {
  const ExpertObservation& obs = *ctx.expert;
  const auto* msg = last_from(ctx.history, Role::solver);
  if (!msg) return std::string(kDescribeAgain);
  const Described d = parse_description(msg->text);
  if (!d.has("Puzzle")) return std::string(kDescribeAgain);
  switch (obs.puzzle) {
  case PuzzleId::button: return expert_button(d);
  case PuzzleId::dog: return expert_dog(d);
  case PuzzleId::wire: return expert_wire(d);
  case PuzzleId::who: return expert_who(d);
  case PuzzleId::keypad: return expert_keypad(d, obs.manual);
  case PuzzleId::led: return expert_led(d);
  case PuzzleId::memory: {
    if (!d.actions.empty()) return std::string(kDescribeAgain);
    const int stage = std::stoi(d.at("Stage"));
    const int display = std::stoi(d.at("Display"));
    const auto labels = split(d.at("Buttons left to right"), ',');
    const auto done = memory_presses(ctx.history);
    std::vector<MemoryPress> history;
    for (int st = 1; st < stage; ++st) {
      const auto it = done.find(st);
      if (it == done.end()) throw AgentError("lost track of memory stages");
      history.push_back(it->second);
    }
    const MemoryTarget t = memory_target(stage, display, history);
    int position = t.value;
    if (t.by == MemoryTarget::By::label) {
      const int idx = index_of(labels, std::to_string(t.value));
      if (idx < 0) throw AgentError("label not on module");
      position = idx + 1;
    }
    return memory_press_token(position);
  }
  case PuzzleId::password: {
    // Offsets of each cycle implied by all up/down presses before each message.
    std::array<int, kPasswordLength> offset{};
    std::array<std::array<char, 3>, kPasswordLength> seen{};
    std::array<std::array<bool, 3>, kPasswordLength> known{};
    for (const auto& m : ctx.history) {
      if (m.role != Role::solver) continue;
      const Described md = parse_description(m.text);
      if (md.has("Letters")) {
        const auto letters = split(md.at("Letters"), ' ');
        for (int i = 0; i < kPasswordLength; ++i) {
          seen[i][offset[i]] = letters.at(i).at(0);
          known[i][offset[i]] = true;
        }
      }
      for (const auto& a : md.actions) {
        if (a.size() == 4 && starts_with(a, "up_")) offset[a[3] - '1'] = (offset[a[3] - '1'] + 1) % 3;
        if (a.size() == 6 && starts_with(a, "down_")) offset[a[5] - '1'] = (offset[a[5] - '1'] + 2) % 3;
      }
    }
    bool complete = true;
    for (const auto& k : known) complete = complete && k[0] && k[1] && k[2];
    std::vector<std::string> out;
    if (!complete) {
      for (int i = 1; i <= kPasswordLength; ++i) out.push_back("up_" + std::to_string(i));
      return join_lines(out);
    }
    PasswordWindows windows{};
    for (int i = 0; i < kPasswordLength; ++i) {
      windows[i] = seen[i];
      std::sort(windows[i].begin(), windows[i].end());
    }
    const auto matches = password_matches(windows, password_words());
    if (matches.size() != 1) throw AgentError("password is ambiguous");
    for (int i = 0; i < kPasswordLength; ++i) {
      int target = 0;
      while (seen[i][target] != matches[0][i]) ++target;
      for (int n = (target - offset[i] + 3) % 3; n > 0; --n) out.push_back("up_" + std::to_string(i + 1));
    }
    out.emplace_back("submit");
    return join_lines(out);
  }
  case PuzzleId::color: {
    const ColorGrid grid = grid_from_description(d);
    const auto* mine = last_from(ctx.history, Role::expert);
    const auto key = mine ? instructed_group(mine->text) : std::nullopt;
    if (d.actions.empty() || !key) return group_instruction(static_cast<GroupKey>(color_fewest_group(grid)));
    const int whites = color_white_count(grid) + static_cast<int>(color_group_cells(grid, *key).size());
    if (whites >= kColorCells) return std::string(kDescribeAgain);
    return group_instruction(color_next_group(whites, *key));
  }
  case PuzzleId::maze: {
    if (!d.actions.empty()) return std::string(kDescribeAgain);
    MazeState m;
    for (int r = 0; r < kMazeSize; ++r) {
      const auto& row = d.at("Maze row " + std::to_string(r + 1));
      for (int c = 0; c < kMazeSize; ++c) m.walls[r][c] = row.at(c) == '#';
    }
    const auto mouse = split(d.at("Mouse"), ',');
    m.mouse = {std::stoi(mouse.at(0).substr(4)) - 1, std::stoi(mouse.at(1).substr(7)) - 1};
    m.heading = parse_heading(mouse.at(2).substr(7)).value();
    const auto torus = parse_sphere_color(d.at("Torus"));
    if (!torus) throw AgentError("unknown torus color");
    const auto want = maze_accepting_color(*torus);
    const auto at = split(d.at("Sphere " + std::string(sphere_color_name(want))), ',');
    const Cell goal{std::stoi(at.at(0).substr(4)) - 1, std::stoi(at.at(1).substr(7)) - 1};
    return join_lines(maze_route(m.walls, m.mouse, m.heading, goal));
  }
  }
  return std::string(kDescribeAgain);
}

} // namespace defuse
