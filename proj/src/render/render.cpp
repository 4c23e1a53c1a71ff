#include "defuse/render.hpp"

#include <png.h>

#include <cstring>
#include <sstream>

#include "canvas.hpp"
#include "defuse/clock.hpp"
#include "defuse/error.hpp"
#include "embedded.hpp"

namespace defuse {

using draw::Canvas;

namespace {

constexpr Rgb kWhite{245, 245, 240};
constexpr Rgb kDark{52, 52, 60};
constexpr Rgb kGrey{150, 150, 156};
constexpr Rgb kButtonFace{226, 222, 206};
constexpr Rgb kUnlit{70, 70, 70};

Rgb named(std::string_view name) {
  if (name == "red") return {210, 40, 40};
  if (name == "blue") return {40, 80, 210};
  if (name == "green") return {40, 170, 60};
  if (name == "yellow") return {235, 205, 30};
  if (name == "magenta") return {200, 50, 190};
  if (name == "purple") return {120, 50, 170};
  if (name == "orange") return {240, 140, 20};
  if (name == "white") return kWhite;
  if (name == "black") return {15, 15, 15};
  return kGrey;
}

void face(Canvas& c, const Theme& t) {
  c.fill_rect(24, 24, 464, 464, t.face);
  c.frame_rect(24, 24, 464, 464, 4, t.ink);
}

void clock_box(Canvas& c, const Theme& t, int clock, int x, int y, int w, int h) {
  c.fill_rect(x, y, w, h, t.display);
  c.text_centered(x + w / 2, y + h / 2, format_clock(clock), 6, t.display_ink);
}

void button_box(Canvas& c, const Theme& t, int x, int y, int w, int h, std::string_view label, int scale) {
  c.fill_rect(x, y, w, h, kButtonFace);
  c.frame_rect(x, y, w, h, 3, t.ink);
  c.text_centered(x + w / 2, y + h / 2, label, scale, t.ink);
}

void paint(Canvas& c, const Theme& t, const ButtonState& s, int clock) {
  clock_box(c, t, clock, 140, 48, 232, 72);
  c.fill_circle(210, 300, 118, t.ink);
  c.fill_circle(210, 300, 112, named(button_color_name(s.button_color)));
  c.text_centered(210, 300, "HOLD", 5, t.ink);
  c.fill_rect(384, 180, 56, 240, t.ink);
  c.fill_rect(390, 186, 44, 228, s.holding ? named(strip_color_name(s.strip_color)) : kUnlit);
}

void paint(Canvas& c, const Theme& t, const DogState& s, int clock) {
  clock_box(c, t, clock, 140, 40, 232, 72);
  constexpr int px = 80, py = 128, cell_w = 118, cell_h = 100, scale = 6;
  c.fill_rect(px - 6, py - 6, 3 * cell_w + 12, 3 * cell_h + 12, t.ink);
  c.fill_rect(px, py, 3 * cell_w, 3 * cell_h, {150, 200, 120});
  c.fill_rect(px, py, 3 * cell_w, cell_h / 2, {160, 205, 235});
  const auto& sprite = draw::dog_sprite();
  const int sw = static_cast<int>(sprite[0].size()) * scale, sh = static_cast<int>(sprite.size()) * scale;
  for (int slot : s.slots) {
    const int ox = px + (slot % 3) * cell_w + (cell_w - sw) / 2;
    const int oy = py + (slot / 3) * cell_h + (cell_h - sh) / 2;
    for (std::size_t r = 0; r < sprite.size(); ++r)
      for (std::size_t k = 0; k < sprite[r].size(); ++k) {
        const char p = sprite[r][k];
        if (p == '.') continue;
        c.fill_rect(ox + static_cast<int>(k) * scale, oy + static_cast<int>(r) * scale, scale, scale,
                    p == '#' ? kDogFur : t.ink);
      }
  }
  button_box(c, t, 186, 436, 140, 40, "SUBMIT", 3);
}

void paint(Canvas& c, const Theme& t, const WireState& s, int) {
  c.fill_rect(300, 40, 176, 44, kWhite);
  c.frame_rect(300, 40, 176, 44, 2, t.ink);
  c.text_centered(388, 62, s.serial, 3, t.ink);
  c.fill_rect(88, 100, 28, 370, kDark);
  c.fill_rect(396, 100, 28, 370, kDark);
  const int n = static_cast<int>(s.wires.size());
  const int gap = 360 / n;
  for (int i = 0; i < n; ++i) {
    const int y = 110 + gap / 2 + i * gap - 9;
    const Rgb col = named(wire_color_name(s.wires[i]));
    c.text(48, y + 2, std::to_string(i + 1), 2, t.ink);
    auto segment = [&](int x0, int x1) {
      c.fill_rect(x0, y - 2, x1 - x0, 22, t.ink);
      c.fill_rect(x0, y, x1 - x0, 18, col);
    };
    if (s.cut[i]) {
      segment(116, 236);
      segment(276, 396);
    } else {
      segment(116, 396);
    }
  }
}

void paint(Canvas& c, const Theme& t, const WhoState& s, int) {
  c.fill_rect(96, 48, 320, 80, t.display);
  if (s.display_word != "(No Text)") c.text_centered(256, 88, s.display_word, 5, t.display_ink);
  for (int p = 0; p < kWhoButtons; ++p) {
    const int x = p % 2 == 0 ? 56 : 264, y = 160 + (p / 2) * 104;
    button_box(c, t, x, y, 192, 84, s.labels[p], 3);
  }
}

void paint(Canvas& c, const Theme& t, const LedState& s, int) {
  const int stage = std::min(s.stage, s.total_stages() - 1);
  c.text(48, 48, std::to_string(stage + 1), 6, t.ink);
  for (int i = 0; i < s.total_stages(); ++i) {
    const int cx = 170 + i * 64;
    c.fill_circle(cx, 72, 24, t.ink);
    c.fill_circle(cx, 72, 20, named(led_color_name(s.colors[i])));
  }
  const auto& letters = s.letters[stage];
  for (int p = 0; p < 4; ++p) {
    const int x = p % 2 == 0 ? 96 : 272, y = p / 2 == 0 ? 148 : 316;
    button_box(c, t, x, y, 144, 144, std::string(1, letters[p]), 10);
  }
}

void paint(Canvas& c, const Theme& t, const MemoryState& s, int) {
  const int stage = std::min(s.stage, kMemoryStages);
  c.fill_rect(120, 56, 200, 180, t.display);
  c.text_centered(220, 146, std::to_string(s.displays[stage - 1]), 16, t.display_ink);
  for (int i = 0; i < kMemoryStages; ++i) {
    const int y = 200 - i * 36;
    c.fill_rect(380, y, 60, 24, i < stage - 1 || s.solved ? Rgb{60, 200, 80} : kUnlit);
    c.frame_rect(380, y, 60, 24, 2, t.ink);
  }
  for (int p = 0; p < 4; ++p) button_box(c, t, 56 + p * 104, 300, 88, 140, std::to_string(s.labels[stage - 1][p]), 8);
}

void paint(Canvas& c, const Theme& t, const KeypadState& s, int) {
  for (int p = 0; p < 4; ++p) {
    const int x = p % 2 == 0 ? 76 : 276, y = p / 2 == 0 ? 60 : 270;
    c.fill_rect(x, y, 160, 180, kButtonFace);
    c.frame_rect(x, y, 160, 180, 3, t.ink);
    c.fill_rect(x + 66, y + 12, 28, 10, p < s.entered ? Rgb{60, 200, 80} : kUnlit);
    const auto rows = draw::glyph_pattern(s.grid[p]);
    for (int r = 0; r < 7; ++r)
      for (int k = 0; k < 7; ++k)
        if (rows[r] & (1u << k)) c.fill_rect(x + 31 + k * 14, y + 40 + r * 18, 14, 18, t.ink);
  }
}

void paint(Canvas& c, const Theme& t, const PasswordState& s, int) {
  const std::string shown = s.shown();
  c.fill_rect(56, 150, 400, 130, t.display);
  for (int i = 0; i < kPasswordLength; ++i) {
    const int cx = 96 + i * 80;
    c.fill_triangle(cx - 22, 130, cx + 22, 130, cx, 100, t.ink);
    c.text_centered(cx, 215, std::string(1, shown[i]), 9, t.display_ink);
    c.fill_triangle(cx - 22, 300, cx + 22, 300, cx, 330, t.ink);
  }
  button_box(c, t, 176, 380, 160, 56, "SUBMIT", 4);
}

void paint(Canvas& c, const Theme& t, const ColorState& s, int) {
  for (int i = 0; i < kColorCells; ++i) {
    const int x = 64 + (i % kColorSide) * 98, y = 64 + (i / kColorSide) * 98;
    c.fill_rect(x, y, 90, 90, t.ink);
    c.fill_rect(x + 4, y + 4, 82, 82, named(color_cell_name(s.grid[i])));
  }
}

void paint(Canvas& c, const Theme& t, const MazeState& s, int) {
  constexpr int ox = 76, oy = 40, cell = 60;
  c.fill_rect(ox - 4, oy - 4, kMazeSize * cell + 8, kMazeSize * cell + 8, t.ink);
  for (int r = 0; r < kMazeSize; ++r)
    for (int k = 0; k < kMazeSize; ++k) {
      c.fill_rect(ox + k * cell, oy + r * cell, cell, cell, t.ink);
      c.fill_rect(ox + k * cell + 1, oy + r * cell + 1, cell - 2, cell - 2, s.walls[r][k] ? kDark : kWhite);
    }
  auto center = [&](Cell at) { return std::pair{ox + at.col * cell + cell / 2, oy + at.row * cell + cell / 2}; };
  for (const auto& sp : s.spheres) {
    const auto [cx, cy] = center(sp.cell);
    c.fill_circle(cx, cy, 18, named(sphere_color_name(sp.color)));
  }
  const auto [mx, my] = center(s.mouse);
  c.fill_circle(mx, my, 20, t.ink);
  c.fill_circle(mx, my, 17, kGrey);
  static constexpr int dx[] = {0, 1, 0, -1}, dy[] = {-1, 0, 1, 0};
  const int h = static_cast<int>(s.heading);
  c.fill_circle(mx + dx[h] * 11, my + dy[h] * 11, 5, t.ink);
  const int mid = kMazeSize * cell / 2;
  c.ring(ox + mid, oy + mid, 15, 8, named(sphere_color_name(s.torus)));
  c.fill_circle(256, 448, 30, t.ink);
  c.fill_circle(256, 448, 26, kButtonFace);
  c.frame_rect(242, 434, 28, 28, 3, t.ink);
  c.fill_rect(250, 434, 3, 18, t.ink);
}

ordered_json element(std::string_view kind) { return {{"kind", kind}}; }

ordered_json elements(const ButtonState& s) {
  auto strip = element("strip");
  strip["color"] = s.holding ? strip_color_name(s.strip_color) : "unlit";
  auto button = element("button");
  button["color"] = button_color_name(s.button_color);
  button["holding"] = s.holding;
  return {button, strip};
}

ordered_json elements(const DogState&) {
  auto pic = element("picture");
  pic["caption"] = "a park scene; count the dogs in the image";
  return {pic};
}

ordered_json elements(const WireState& s) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < s.wires.size(); ++i) {
    auto w = element("wire");
    w["position"] = i + 1;
    w["color"] = wire_color_name(s.wires[i]);
    w["cut"] = static_cast<bool>(s.cut[i]);
    out.push_back(w);
  }
  auto serial = element("serial_number");
  serial["text"] = s.serial;
  out.push_back(serial);
  return out;
}

ordered_json elements(const WhoState& s) {
  auto d = element("display");
  d["text"] = s.display_word == "(No Text)" ? "" : s.display_word;
  ordered_json out = {d};
  for (int p = 0; p < kWhoButtons; ++p) {
    auto b = element("button");
    b["position"] = who_position_name(static_cast<WhoPosition>(p));
    b["label"] = s.labels[p];
    out.push_back(b);
  }
  return out;
}

ordered_json elements(const LedState& s) {
  const int stage = std::min(s.stage, s.total_stages() - 1);
  auto ind = element("stage_indicator");
  ind["stage"] = stage + 1;
  ordered_json out = {ind};
  for (int i = 0; i < s.total_stages(); ++i) {
    auto led = element("led");
    led["index"] = i + 1;
    led["color"] = led_color_name(s.colors[i]);
    out.push_back(led);
  }
  for (int p = 0; p < 4; ++p) {
    auto b = element("button");
    b["position"] = kLedPositionNames[p];
    b["letter"] = std::string(1, s.letters[stage][p]);
    out.push_back(b);
  }
  return out;
}

ordered_json elements(const MemoryState& s) {
  const int stage = std::min(s.stage, kMemoryStages);
  auto st = element("stage_indicator");
  st["stage"] = stage;
  auto d = element("display");
  d["value"] = s.displays[stage - 1];
  ordered_json out = {st, d};
  for (int p = 0; p < 4; ++p) {
    auto b = element("button");
    b["position"] = p + 1;
    b["label"] = s.labels[stage - 1][p];
    out.push_back(b);
  }
  return out;
}

ordered_json elements(const KeypadState& s) {
  static constexpr std::string_view names[] = {"top left", "top right", "bottom left", "bottom right"};
  ordered_json out = ordered_json::array();
  for (int p = 0; p < 4; ++p) {
    auto b = element("symbol_button");
    b["position"] = names[p];
    b["glyph"] = glyph_names()[s.grid[p]];
    b["lit"] = p < s.entered;
    out.push_back(b);
  }
  return out;
}

ordered_json elements(const PasswordState& s) {
  ordered_json out = ordered_json::array();
  const std::string shown = s.shown();
  for (int i = 0; i < kPasswordLength; ++i) {
    auto l = element("letter");
    l["position"] = i + 1;
    l["letter"] = std::string(1, shown[i]);
    out.push_back(l);
  }
  return out;
}

ordered_json elements(const ColorState& s) {
  ordered_json out = ordered_json::array();
  for (int i = 0; i < kColorCells; ++i) {
    auto sq = element("square");
    sq["row"] = i / kColorSide + 1;
    sq["column"] = i % kColorSide + 1;
    sq["color"] = color_cell_name(s.grid[i]);
    out.push_back(sq);
  }
  return out;
}

ordered_json elements(const MazeState& s) {
  ordered_json out = ordered_json::array();
  for (int r = 0; r < kMazeSize; ++r) {
    std::string line;
    for (int k = 0; k < kMazeSize; ++k) line += s.walls[r][k] ? '#' : '.';
    auto row = element("maze_row");
    row["row"] = r + 1;
    row["cells"] = line;
    out.push_back(row);
  }
  auto mouse = element("mouse");
  mouse["row"] = s.mouse.row + 1;
  mouse["column"] = s.mouse.col + 1;
  mouse["heading"] = heading_name(s.heading);
  out.push_back(mouse);
  for (const auto& sp : s.spheres) {
    auto e = element("sphere");
    e["color"] = sphere_color_name(sp.color);
    e["row"] = sp.cell.row + 1;
    e["column"] = sp.cell.col + 1;
    out.push_back(e);
  }
  auto torus = element("torus");
  torus["color"] = sphere_color_name(s.torus);
  out.push_back(torus);
  return out;
}

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string str(const ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void png_write_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

struct ReadCursor {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos = 0;
};

void png_read_cb(png_structp png, png_bytep data, png_size_t len) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + len > cur->bytes->size()) png_error(png, "truncated PNG");
  std::memcpy(data, cur->bytes->data() + cur->pos, len);
  cur->pos += len;
}

} // namespace

Rgb RenderedImage::at(int x, int y) const {
  const auto* p = &rgb[(static_cast<std::size_t>(y) * width + x) * 3];
  return {p[0], p[1], p[2]};
}

RenderedImage render_image(const PuzzleState& s, int clock, const Theme& theme) {
  Canvas c(kImageSize, kImageSize, theme.background);
  face(c, theme);
  std::visit([&](const auto& st) { paint(c, theme, st, clock); }, s.data);
  return c.take();
}

std::vector<std::uint8_t> encode_png(const RenderedImage& img) {
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encoding failed");
  }
  png_set_write_fn(png, &out, png_write_cb, nullptr);
  png_set_compression_level(png, 6);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, const_cast<png_bytep>(&img.rgb[static_cast<std::size_t>(y) * img.width * 3]));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

RenderedImage decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw Error("not a PNG");
  RenderedImage img;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("PNG decoding failed");
  }
  ReadCursor cur{&bytes};
  png_set_read_fn(png, &cur, png_read_cb);
  png_read_info(png, info);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_palette_to_rgb(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.rgb.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (int y = 0; y < img.height; ++y)
    png_read_row(png, &img.rgb[static_cast<std::size_t>(y) * img.width * 3], nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

ordered_json solver_view(const PuzzleState& s, int clock) {
  return {{"schema", 1},
          {"puzzle", puzzle_name(s.id())},
          {"clock_display", format_clock(clock)},
          {"visible_elements", std::visit([](const auto& st) { return elements(st); }, s.data)},
          {"available_actions", available_actions(s)}};
}

const std::vector<std::string>& solution_only_fields() {
  static const std::vector<std::string> fields = {
      "correct_index", "secret",       "secret_word",   "target_label", "referenced_label",
      "solution_order", "solution",    "n_dogs",        "dogs",         "release_digit",
      "correct_buttons", "stage_cells", "stage_key",    "columns",      "accepting_color",
      "history",        "initial_grid", "recolor_seed", "strip_color"};
  return fields;
}

std::string describe_view(const ordered_json& view) {
  std::ostringstream out;
  out << "Puzzle: " << str(view.at("puzzle")) << "\n";
  out << "Clock: " << str(view.at("clock_display")) << "\n";
  std::vector<std::string> wires, letters, leds, memory_labels;
  for (const auto& e : view.at("visible_elements")) {
    const std::string kind = e.at("kind");
    if (kind == "wire") {
      wires.push_back(str(e["color"]) + (e["cut"].get<bool>() ? " (cut)" : ""));
    } else if (kind == "serial_number") {
      out << "Serial number: " << str(e["text"]) << "\n";
    } else if (kind == "button" && e.contains("holding")) {
      out << "Button color: " << str(e["color"]) << "\nHolding: " << (e["holding"].get<bool>() ? "yes" : "no")
          << "\n";
    } else if (kind == "strip") {
      out << "Strip: " << str(e["color"]) << "\n";
    } else if (kind == "picture") {
      out << "Picture: " << str(e["caption"]) << "\n";
    } else if (kind == "display") {
      const std::string text = e.contains("text") ? str(e["text"]) : str(e["value"]);
      out << "Display: " << (text.empty() ? "(empty)" : text) << "\n";
    } else if (kind == "button" && e.contains("label") && e["position"].is_string()) {
      out << "Button " << str(e["position"]) << ": " << str(e["label"]) << "\n";
    } else if (kind == "button" && e.contains("label")) {
      memory_labels.push_back(str(e["label"]));
    } else if (kind == "button" && e.contains("letter")) {
      out << "Button " << str(e["position"]) << ": " << str(e["letter"]) << "\n";
    } else if (kind == "stage_indicator") {
      out << "Stage: " << str(e["stage"]) << "\n";
    } else if (kind == "led") {
      leds.push_back(str(e["color"]));
    } else if (kind == "symbol_button") {
      out << "Symbol " << str(e["position"]) << ": " << str(e["glyph"]) << "\n";
    } else if (kind == "letter") {
      letters.push_back(str(e["letter"]));
    } else if (kind == "square") {
      if (e["column"].get<int>() == 1) out << "Row " << str(e["row"]) << ":";
      out << " " << str(e["color"]);
      if (e["column"].get<int>() == kColorSide) out << "\n";
    } else if (kind == "maze_row") {
      out << "Maze row " << str(e["row"]) << ": " << str(e["cells"]) << "\n";
    } else if (kind == "mouse") {
      out << "Mouse: row " << str(e["row"]) << ", column " << str(e["column"]) << ", facing " << str(e["heading"])
          << "\n";
    } else if (kind == "sphere") {
      out << "Sphere " << str(e["color"]) << ": row " << str(e["row"]) << ", column " << str(e["column"]) << "\n";
    } else if (kind == "torus") {
      out << "Torus: " << str(e["color"]) << "\n";
    }
  }
  if (!wires.empty()) out << "Wires top to bottom: " << join(wires, ", ") << "\n";
  if (!leds.empty()) out << "LEDs left to right: " << join(leds, ", ") << "\n";
  if (!memory_labels.empty()) out << "Buttons left to right: " << join(memory_labels, ", ") << "\n";
  if (!letters.empty()) out << "Letters: " << join(letters, " ") << "\n";
  return out.str();
}

std::string manual_text(PuzzleId id, const PuzzleState* instance) {
  const auto text = embedded_text("manuals/" + std::string(puzzle_name(id)) + ".txt");
  if (text.empty()) throw Error("missing manual for " + std::string(puzzle_name(id)));
  std::string out(text);
  if (id == PuzzleId::keypad && instance && instance->id() == PuzzleId::keypad) {
    const auto& st = std::get<KeypadState>(instance->data);
    out += "\nColumns (symbols listed top to bottom):\n";
    for (int c = 0; c < kKeypadColumns; ++c) {
      std::vector<std::string> names;
      for (int g : st.columns[c]) names.emplace_back(glyph_names()[g]);
      out += "Column " + std::to_string(c + 1) + ": " + join(names, ", ") + "\n";
    }
  }
  return out;
}

std::string prompt_text(Role role) {
  const auto text = embedded_text(role == Role::solver ? "prompts/solver.txt" : "prompts/expert.txt");
  if (text.empty()) throw Error("missing prompt");
  return std::string(text);
}

} // namespace defuse
