#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

inline constexpr int kPasswordLength = 5;

const std::vector<std::string>& password_words();

/// Three alphabetically consecutive letters per position.
using PasswordWindows = std::array<std::array<char, 3>, kPasswordLength>;

/// Every listed word spellable by choosing one letter per window.
std::vector<std::string> password_matches(const PasswordWindows& windows, const std::vector<std::string>& words);

struct PasswordState {
  std::string secret;
  std::array<char, kPasswordLength> window_start{};
  std::array<int, kPasswordLength> cursor{};
  bool solved = false;

  PasswordWindows windows() const;
  std::string shown() const;
};

PasswordState generate_password(Rng& rng, const GenParams& params);
bool validate(const PasswordState& s);
std::vector<std::string> actions(const PasswordState& s);
StepResult apply(PasswordState& s, std::string_view token, int clock);
double progress(const PasswordState& s);
std::vector<std::string> oracle_plan(const PasswordState& s, int clock, int decrement);
ordered_json to_json(const PasswordState& s);

} // namespace defuse
