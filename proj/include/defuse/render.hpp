#pragma once

#include "defuse/puzzle.hpp"

namespace defuse {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Theme {
  Rgb background{40, 42, 48};
  Rgb face{196, 198, 190};
  Rgb ink{20, 20, 20};
  Rgb display{16, 24, 16};
  Rgb display_ink{120, 230, 120};

  static Theme standard() { return {}; }
};

struct RenderedImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb; // row-major, 3 bytes per pixel

  Rgb at(int x, int y) const;
};

inline constexpr int kImageSize = 512;

RenderedImage render_image(const PuzzleState& s, int clock, const Theme& theme = Theme::standard());

/// Lossless PNG, fixed compression settings so equal images give equal bytes.
std::vector<std::uint8_t> encode_png(const RenderedImage& img);
RenderedImage decode_png(const std::vector<std::uint8_t>& bytes);

/// Fill color of dog sprite bodies; no other element uses it.
inline constexpr Rgb kDogFur{139, 90, 43};

/// Structured solver view. Never contains solution-only fields.
ordered_json solver_view(const PuzzleState& s, int clock);

/// Keys that must never appear anywhere in a solver view.
const std::vector<std::string>& solution_only_fields();

/// Plain-text rendering of a structured view for non-vision agents.
std::string describe_view(const ordered_json& view);

/// Manual section for a puzzle; keypad columns are substituted from the instance.
std::string manual_text(PuzzleId id, const PuzzleState* instance = nullptr);

/// Prompt text bundled from data/prompts.
std::string prompt_text(Role role);

} // namespace defuse
