#include "canvas.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "defuse/rng.hpp"

namespace defuse::draw {

namespace {

struct FontChar {
  char c;
  std::array<std::uint8_t, 7> rows;
};

constexpr FontChar kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}}, {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}}, {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}}, {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}}, {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}}, {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}}, {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}}, {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}}, {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}}, {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}}, {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}}, {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}}, {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}}, {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}}, {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}}, {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}}, {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}}, {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {':', {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00}}, {'?', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x00, 0x04}},
    {'\'', {0x0C, 0x04, 0x08, 0x00, 0x00, 0x00, 0x00}}, {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
    {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}}, {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}}, {'#', {0x0A, 0x0A, 0x1F, 0x0A, 0x1F, 0x0A, 0x0A}},
    {' ', {0, 0, 0, 0, 0, 0, 0}},
};

const std::array<std::uint8_t, 7>* font_rows(char c) {
  const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& f : kFont)
    if (f.c == up) return &f.rows;
  return nullptr;
}

} // namespace

Canvas::Canvas(int w, int h, Rgb fill) {
  img_.width = w;
  img_.height = h;
  img_.rgb.resize(static_cast<std::size_t>(w) * h * 3);
  fill_rect(0, 0, w, h, fill);
}

void Canvas::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= img_.width || y >= img_.height) return;
  auto* p = &img_.rgb[(static_cast<std::size_t>(y) * img_.width + x) * 3];
  p[0] = c.r;
  p[1] = c.g;
  p[2] = c.b;
}

void Canvas::fill_rect(int x, int y, int w, int h, Rgb c) {
  for (int yy = std::max(0, y); yy < std::min(img_.height, y + h); ++yy)
    for (int xx = std::max(0, x); xx < std::min(img_.width, x + w); ++xx) set(xx, yy, c);
}

void Canvas::frame_rect(int x, int y, int w, int h, int t, Rgb c) {
  fill_rect(x, y, w, t, c);
  fill_rect(x, y + h - t, w, t, c);
  fill_rect(x, y, t, h, c);
  fill_rect(x + w - t, y, t, h, c);
}

void Canvas::fill_circle(int cx, int cy, int r, Rgb c) { ring(cx, cy, r, -1, c); }

void Canvas::ring(int cx, int cy, int ro, int ri, Rgb c) {
  for (int y = -ro; y <= ro; ++y)
    for (int x = -ro; x <= ro; ++x) {
      const int d2 = x * x + y * y;
      if (d2 <= ro * ro && (ri < 0 || d2 > ri * ri)) set(cx + x, cy + y, c);
    }
}

void Canvas::fill_triangle(int x0, int y0, int x1, int y1, int x2, int y2, Rgb c) {
  const int minx = std::min({x0, x1, x2}), maxx = std::max({x0, x1, x2});
  const int miny = std::min({y0, y1, y2}), maxy = std::max({y0, y1, y2});
  auto edge = [](int ax, int ay, int bx, int by, int px, int py) {
    return static_cast<long>(bx - ax) * (py - ay) - static_cast<long>(by - ay) * (px - ax);
  };
  for (int y = miny; y <= maxy; ++y)
    for (int x = minx; x <= maxx; ++x) {
      const long a = edge(x0, y0, x1, y1, x, y), b = edge(x1, y1, x2, y2, x, y), d = edge(x2, y2, x0, y0, x, y);
      if ((a >= 0 && b >= 0 && d >= 0) || (a <= 0 && b <= 0 && d <= 0)) set(x, y, c);
    }
}

int text_width(std::string_view s, int scale) {
  if (s.empty()) return 0;
  return static_cast<int>(s.size()) * 6 * scale - scale;
}

int Canvas::text(int x, int y, std::string_view s, int scale, Rgb c) {
  int pen = x;
  for (char ch : s) {
    if (const auto* rows = font_rows(ch)) {
      for (int r = 0; r < 7; ++r)
        for (int col = 0; col < 5; ++col)
          if ((*rows)[r] & (0x10 >> col)) fill_rect(pen + col * scale, y + r * scale, scale, scale, c);
    }
    pen += 6 * scale;
  }
  return pen - x;
}

void Canvas::text_centered(int cx, int cy, std::string_view s, int scale, Rgb c) {
  text(cx - text_width(s, scale) / 2, cy - 7 * scale / 2, s, scale, c);
}

std::array<std::uint8_t, 7> glyph_pattern(int glyph) {
  std::uint64_t h = mix64(0x6b6579706164ULL + static_cast<std::uint64_t>(glyph));
  std::array<std::uint8_t, 7> rows{};
  for (int r = 0; r < 7; ++r) {
    const std::uint8_t left = static_cast<std::uint8_t>(h & 0xF); // columns 0..3
    h >>= 4;
    std::uint8_t row = 0;
    for (int c = 0; c < 4; ++c)
      if (left & (1u << c)) row |= static_cast<std::uint8_t>((1u << c) | (1u << (6 - c)));
    rows[r] = row;
  }
  return rows;
}

const std::array<std::string_view, 9>& dog_sprite() {
  static constexpr std::array<std::string_view, 9> rows = {
      ".........##.", //
      "........####", //
      "........##e#", //
      "##......####", //
      ".#########..", //
      ".#########..", //
      ".#########..", //
      ".#.#....#.#.", //
      ".#.#....#.#.", //
  };
  return rows;
}

} // namespace defuse::draw
