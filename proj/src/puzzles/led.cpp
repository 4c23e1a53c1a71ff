#include "defuse/puzzles/led.hpp"

namespace defuse {

namespace {

constexpr std::array<LedColor, 6> kLedColors = {LedColor::red,    LedColor::green,  LedColor::blue,
                                                LedColor::yellow, LedColor::purple, LedColor::orange};

LedLetters random_letters(Rng& rng) {
  const auto picks = rng.sample(26, 4);
  LedLetters out{};
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>('A' + picks[i]);
  return out;
}

} // namespace

std::string_view led_color_name(LedColor c) {
  switch (c) {
  case LedColor::red: return "red";
  case LedColor::green: return "green";
  case LedColor::blue: return "blue";
  case LedColor::yellow: return "yellow";
  case LedColor::purple: return "purple";
  case LedColor::orange: return "orange";
  }
  return "?";
}

std::optional<LedColor> parse_led_color(std::string_view s) {
  for (auto c : kLedColors)
    if (led_color_name(c) == s) return c;
  return std::nullopt;
}

int led_multiplier(LedColor c) { return static_cast<int>(c) + 2; }

std::string led_press_token(int position) {
  static constexpr std::array<std::string_view, 4> tokens = {"press_top_left", "press_top_right",
                                                             "press_bottom_left", "press_bottom_right"};
  return std::string(tokens.at(position));
}

std::vector<int> led_correct_buttons(const LedLetters& letters, int multiplier) {
  std::vector<int> out;
  for (int p = 0; p < 4; ++p) {
    const int value = letters[p] - 'A';
    const int opposite = letters[led_opposite(p)] - 'A';
    if (value * multiplier % 26 == opposite) out.push_back(p);
  }
  return out;
}

LedState generate_led(Rng& rng, const GenParams&) {
  LedState s;
  const int stages = rng.uniform(2, 5);
  for (int i = 0; i < stages; ++i) {
    const LedColor color = kLedColors[rng.below(kLedColors.size())];
    // Rejection keeps the letter draw uniform over boards that have an answer.
    LedLetters letters = random_letters(rng);
    for (int tries = 0; tries < 10000 && led_correct_buttons(letters, led_multiplier(color)).empty(); ++tries)
      letters = random_letters(rng);
    s.colors.push_back(color);
    s.letters.push_back(letters);
  }
  return s;
}

bool validate(const LedState& s) {
  if (s.total_stages() < 2 || s.total_stages() > 5) return false;
  if (s.letters.size() != s.colors.size()) return false;
  for (int i = 0; i < s.total_stages(); ++i) {
    const auto& l = s.letters[i];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < a; ++b)
        if (l[a] == l[b]) return false;
    if (led_correct_buttons(l, led_multiplier(s.colors[i])).empty()) return false;
  }
  return true;
}

std::vector<std::string> actions(const LedState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int p = 0; p < 4; ++p) out.push_back(led_press_token(p));
  return out;
}

StepResult apply(LedState& s, std::string_view token, int) {
  const int pos = index_of(actions(s), token);
  if (pos < 0) return {OutcomeKind::noop, "action not available"};
  const auto correct = led_correct_buttons(s.letters[s.stage], led_multiplier(s.colors[s.stage]));
  const std::string letter(1, s.letters[s.stage][pos]);
  if (std::find(correct.begin(), correct.end(), pos) == correct.end()) {
    const bool discarded = s.stage > 0;
    s.stage = 0;
    return {discarded ? OutcomeKind::reset : OutcomeKind::mistake, "pressed " + letter + ": wrong button, back to stage 1"};
  }
  ++s.stage;
  s.best_stage = std::max(s.best_stage, s.stage);
  if (s.stage == s.total_stages()) {
    s.solved = true;
    return {OutcomeKind::solved, "pressed " + letter};
  }
  return {OutcomeKind::correct, "pressed " + letter + "; stage " + std::to_string(s.stage + 1)};
}

double progress(const LedState& s) { return 100.0 * s.best_stage / s.total_stages(); }

std::vector<std::string> oracle_plan(const LedState& s, int, int) {
  std::vector<std::string> plan;
  for (int i = s.solved ? s.total_stages() : s.stage; i < s.total_stages(); ++i)
    plan.push_back(led_press_token(led_correct_buttons(s.letters[i], led_multiplier(s.colors[i])).front()));
  return plan;
}

ordered_json to_json(const LedState& s) {
  ordered_json colors = ordered_json::array(), letters = ordered_json::array();
  for (auto c : s.colors) colors.push_back(led_color_name(c));
  for (const auto& l : s.letters) letters.push_back(std::string(l.begin(), l.end()));
  return {{"colors", colors}, {"letters", letters}, {"stage", s.stage}, {"best_stage", s.best_stage}, {"solved", s.solved}};
}

} // namespace defuse
