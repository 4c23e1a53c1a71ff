#include "defuse/puzzles/password.hpp"

#include <algorithm>

namespace defuse {

const std::vector<std::string>& password_words() {
  static const std::vector<std::string> words = {
      "about", "after", "again", "below", "could", "every", "first", "found", "great", "house", "large", "learn",
      "never", "other", "place", "plant", "point", "right", "small", "sound", "spell", "still", "study", "their",
      "there", "these", "thing", "think", "three", "water", "where", "which", "world", "would", "write"};
  return words;
}

std::vector<std::string> password_matches(const PasswordWindows& windows, const std::vector<std::string>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    if (w.size() != kPasswordLength) continue;
    bool ok = true;
    for (int i = 0; i < kPasswordLength && ok; ++i)
      ok = std::find(windows[i].begin(), windows[i].end(), w[i]) != windows[i].end();
    if (ok) out.push_back(w);
  }
  return out;
}

PasswordWindows PasswordState::windows() const {
  PasswordWindows out{};
  for (int i = 0; i < kPasswordLength; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = static_cast<char>(window_start[i] + j);
  return out;
}

std::string PasswordState::shown() const {
  std::string out;
  for (int i = 0; i < kPasswordLength; ++i) out += static_cast<char>(window_start[i] + cursor[i]);
  return out;
}

PasswordState generate_password(Rng& rng, const GenParams&) {
  PasswordState s;
  const auto& words = password_words();
  s.secret = words[rng.below(words.size())];
  for (int i = 0; i < kPasswordLength; ++i) {
    const char letter = s.secret[i];
    // Window offsets that keep the window inside a..z.
    std::vector<int> offsets;
    for (int o = 0; o < 3; ++o)
      if (letter - o >= 'a' && letter - o + 2 <= 'z') offsets.push_back(o);
    const int offset = offsets[rng.below(offsets.size())];
    s.window_start[i] = static_cast<char>(letter - offset);
    s.cursor[i] = rng.uniform(0, 2);
  }
  return s;
}

bool validate(const PasswordState& s) {
  const auto matches = password_matches(s.windows(), password_words());
  return matches.size() == 1 && matches.front() == s.secret;
}

std::vector<std::string> actions(const PasswordState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int i = 1; i <= kPasswordLength; ++i) out.push_back("up_" + std::to_string(i));
  for (int i = 1; i <= kPasswordLength; ++i) out.push_back("down_" + std::to_string(i));
  out.emplace_back("submit");
  return out;
}

StepResult apply(PasswordState& s, std::string_view token, int) {
  if (s.solved || index_of(actions(s), token) < 0) return {OutcomeKind::noop, "action not available"};
  if (token == "submit") {
    const std::string word = s.shown();
    if (word == s.secret) {
      s.solved = true;
      return {OutcomeKind::solved, "submitted " + word};
    }
    return {OutcomeKind::mistake, "submitted " + word + ": not the password"};
  }
  const bool up = token.starts_with("up_");
  const int i = (token.back() - '0') - 1;
  s.cursor[i] = (s.cursor[i] + (up ? 1 : 2)) % 3;
  return {OutcomeKind::correct, "position " + std::to_string(i + 1) + " shows " +
                                    std::string(1, static_cast<char>(s.window_start[i] + s.cursor[i]))};
}

double progress(const PasswordState& s) { return s.solved ? 100.0 : 0.0; }

std::vector<std::string> oracle_plan(const PasswordState& s, int, int) {
  std::vector<std::string> plan;
  if (s.solved) return plan;
  for (int i = 0; i < kPasswordLength; ++i) {
    const int want = s.secret[i] - s.window_start[i];
    for (int c = s.cursor[i]; c != want; c = (c + 1) % 3) plan.push_back("up_" + std::to_string(i + 1));
  }
  plan.emplace_back("submit");
  return plan;
}

ordered_json to_json(const PasswordState& s) {
  return {{"secret", s.secret},
          {"window_start", std::string(s.window_start.begin(), s.window_start.end())},
          {"cursor", s.cursor},
          {"solved", s.solved}};
}

} // namespace defuse
