#pragma once

#include <span>

#include "defuse/puzzles/common.hpp"

namespace defuse {

enum class WhoPosition : std::uint8_t { top_left, top_right, middle_left, middle_right, bottom_left, bottom_right };

inline constexpr int kWhoButtons = 6;

std::string_view who_position_name(WhoPosition p); // "top left"
std::string who_press_token(WhoPosition p);        // "press_top_left"

/// Display values (the step-1 keys). "(No Text)" is an empty display.
const std::vector<std::string>& who_display_words();
/// Button label vocabulary (the step-2 keys).
const std::vector<std::string>& who_label_words();
/// The 14-entry priority list for a step-2 key.
const std::vector<std::string>& who_step2_list(std::string_view label);

WhoPosition who_step1(std::string_view display_word);
/// First entry of the label's list that is on the module.
std::string who_step2(std::string_view referenced_label, std::span<const std::string> on_module_labels);

struct WhoState {
  std::string display_word;
  std::array<std::string, kWhoButtons> labels; // indexed by WhoPosition
  bool solved = false;

  std::string referenced_label() const;
  std::string target_label() const;
};

WhoState generate_who(Rng& rng, const GenParams& params);
bool validate(const WhoState& s);
std::vector<std::string> actions(const WhoState& s);
StepResult apply(WhoState& s, std::string_view token, int clock);
double progress(const WhoState& s);
std::vector<std::string> oracle_plan(const WhoState& s, int clock, int decrement);
ordered_json to_json(const WhoState& s);

} // namespace defuse
