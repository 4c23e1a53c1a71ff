#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

enum class LedColor : std::uint8_t { red, green, blue, yellow, purple, orange };

std::string_view led_color_name(LedColor c);
std::optional<LedColor> parse_led_color(std::string_view s);
int led_multiplier(LedColor c);

/// Buttons sit in a 2x2 cluster: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
constexpr int led_opposite(int position) { return 3 - position; }

inline constexpr std::array<std::string_view, 4> kLedPositionNames = {"top left", "top right", "bottom left",
                                                                      "bottom right"};
std::string led_press_token(int position);

using LedLetters = std::array<char, 4>;

/// Positions p with value(p) * multiplier mod 26 == value(opposite(p)), A=0..Z=25.
std::vector<int> led_correct_buttons(const LedLetters& letters, int multiplier);

struct LedState {
  std::vector<LedColor> colors;   // one LED per stage
  std::vector<LedLetters> letters; // button letters per stage
  int stage = 0;                   // 0-based current stage
  int best_stage = 0;              // most stages ever cleared
  bool solved = false;

  int total_stages() const { return static_cast<int>(colors.size()); }
};

LedState generate_led(Rng& rng, const GenParams& params);
bool validate(const LedState& s);
std::vector<std::string> actions(const LedState& s);
StepResult apply(LedState& s, std::string_view token, int clock);
double progress(const LedState& s);
std::vector<std::string> oracle_plan(const LedState& s, int clock, int decrement);
ordered_json to_json(const LedState& s);

} // namespace defuse
