#pragma once

#include <string_view>

#include "defuse/render.hpp"

namespace defuse::draw {

class Canvas {
public:
  Canvas(int w, int h, Rgb fill);

  void set(int x, int y, Rgb c);
  void fill_rect(int x, int y, int w, int h, Rgb c);
  void frame_rect(int x, int y, int w, int h, int thickness, Rgb c);
  void fill_circle(int cx, int cy, int r, Rgb c);
  void ring(int cx, int cy, int r_outer, int r_inner, Rgb c);
  void fill_triangle(int x0, int y0, int x1, int y1, int x2, int y2, Rgb c);
  /// 5x7 bitmap text; lowercase is drawn as uppercase. Returns drawn width.
  int text(int x, int y, std::string_view s, int scale, Rgb c);
  void text_centered(int cx, int cy, std::string_view s, int scale, Rgb c);

  RenderedImage take() { return std::move(img_); }

private:
  RenderedImage img_;
};

int text_width(std::string_view s, int scale);

/// 7x7 left-right symmetric pattern for a keypad glyph.
std::array<std::uint8_t, 7> glyph_pattern(int glyph);

/// Dog sprite rows; '#' fur, 'e' eye, '.' transparent.
const std::array<std::string_view, 9>& dog_sprite();

} // namespace defuse::draw
