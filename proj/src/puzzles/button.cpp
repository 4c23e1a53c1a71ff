#include "defuse/puzzles/button.hpp"

#include "defuse/clock.hpp"

namespace defuse {

std::string_view button_color_name(ButtonColor c) {
  switch (c) {
  case ButtonColor::yellow: return "yellow";
  case ButtonColor::red: return "red";
  case ButtonColor::blue: return "blue";
  case ButtonColor::white: return "white";
  }
  return "?";
}

std::string_view strip_color_name(StripColor c) {
  switch (c) {
  case StripColor::blue: return "blue";
  case StripColor::white: return "white";
  case StripColor::yellow: return "yellow";
  case StripColor::red: return "red";
  case StripColor::green: return "green";
  }
  return "?";
}

int button_release_digit(StripColor strip) {
  switch (strip) {
  case StripColor::blue: return 4;
  case StripColor::white: return 1;
  case StripColor::yellow: return 5;
  default: return 1;
  }
}

ButtonState generate_button(Rng& rng, const GenParams& params) {
  ButtonState s;
  s.button_color = params.button_any_color ? static_cast<ButtonColor>(rng.below(4)) : ButtonColor::yellow;
  s.strip_color = static_cast<StripColor>(rng.below(5));
  return s;
}

bool validate(const ButtonState& s) { return !s.holding && !s.solved; }

std::vector<std::string> actions(const ButtonState& s) {
  if (s.solved) return {};
  return {s.holding ? "release" : "hold", std::string(kWaitToken)};
}

StepResult apply(ButtonState& s, std::string_view token, int clock) {
  if (token == kWaitToken) return {OutcomeKind::noop, "waited"};
  if (token == "hold" && !s.holding) {
    s.holding = true;
    return {OutcomeKind::correct, "button held; strip lit " + std::string(strip_color_name(s.strip_color))};
  }
  if (token == "release" && s.holding) {
    s.holding = false;
    const std::string shown = format_clock(clock);
    if (timer_has_digit(shown, button_release_digit(s.strip_color))) {
      s.solved = true;
      return {OutcomeKind::solved, "released at " + shown};
    }
    return {OutcomeKind::mistake, "released at " + shown + ": wrong time"};
  }
  return {OutcomeKind::noop, "action not available"};
}

double progress(const ButtonState& s) { return s.solved ? 100.0 : 0.0; }

std::vector<std::string> oracle_plan(const ButtonState& s, int clock, int decrement) {
  std::vector<std::string> plan;
  if (s.solved) return plan;
  if (!s.holding) {
    plan.emplace_back("hold");
    clock -= decrement;
  }
  const int digit = button_release_digit(s.strip_color);
  while (clock > 0 && !timer_has_digit(format_clock(clock), digit)) {
    plan.emplace_back(kWaitToken);
    clock -= decrement;
  }
  plan.emplace_back("release");
  return plan;
}

ordered_json to_json(const ButtonState& s) {
  return {{"button_color", button_color_name(s.button_color)},
          {"strip_color", strip_color_name(s.strip_color)},
          {"holding", s.holding},
          {"solved", s.solved}};
}

} // namespace defuse
