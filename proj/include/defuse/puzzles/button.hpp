#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

enum class ButtonColor : std::uint8_t { yellow, red, blue, white };
enum class StripColor : std::uint8_t { blue, white, yellow, red, green };

std::string_view button_color_name(ButtonColor c);
std::string_view strip_color_name(StripColor c);

struct ButtonState {
  ButtonColor button_color = ButtonColor::yellow;
  /// Only shown to the solver while the button is held.
  StripColor strip_color = StripColor::blue;
  bool holding = false;
  bool solved = false;
};

/// Digit that must be on the timer when the button is released.
int button_release_digit(StripColor strip);

ButtonState generate_button(Rng& rng, const GenParams& params);
bool validate(const ButtonState& s);
std::vector<std::string> actions(const ButtonState& s);
StepResult apply(ButtonState& s, std::string_view token, int clock);
double progress(const ButtonState& s);
std::vector<std::string> oracle_plan(const ButtonState& s, int clock, int decrement);
ordered_json to_json(const ButtonState& s);

} // namespace defuse
