#include "defuse/puzzles/dog.hpp"

#include <algorithm>

#include "defuse/clock.hpp"

namespace defuse {

int dog_target_digit(int n_dogs) { return n_dogs; }

DogState generate_dog(Rng& rng, const GenParams&) {
  DogState s;
  s.n_dogs = rng.uniform(0, kMaxDogs);
  s.slots = rng.sample(kDogSlots, s.n_dogs);
  std::sort(s.slots.begin(), s.slots.end());
  return s;
}

bool validate(const DogState& s) {
  if (s.n_dogs < 0 || s.n_dogs > kMaxDogs) return false;
  if (static_cast<int>(s.slots.size()) != s.n_dogs) return false;
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    if (s.slots[i] < 0 || s.slots[i] >= kDogSlots) return false;
    if (i > 0 && s.slots[i] <= s.slots[i - 1]) return false;
  }
  return true;
}

std::vector<std::string> actions(const DogState& s) {
  if (s.solved) return {};
  return {"submit", std::string(kWaitToken)};
}

StepResult apply(DogState& s, std::string_view token, int clock) {
  if (token == kWaitToken) return {OutcomeKind::noop, "waited"};
  if (token != "submit") return {OutcomeKind::noop, "action not available"};
  const std::string shown = format_clock(clock);
  if (timer_last_digit(shown) == dog_target_digit(s.n_dogs)) {
    s.solved = true;
    return {OutcomeKind::solved, "submitted at " + shown};
  }
  return {OutcomeKind::mistake, "submitted at " + shown + ": wrong time"};
}

double progress(const DogState& s) { return s.solved ? 100.0 : 0.0; }

std::vector<std::string> oracle_plan(const DogState& s, int clock, int decrement) {
  std::vector<std::string> plan;
  if (s.solved) return plan;
  const int digit = dog_target_digit(s.n_dogs);
  while (clock > 0 && timer_last_digit(format_clock(clock)) != digit) {
    plan.emplace_back(kWaitToken);
    clock -= decrement;
  }
  plan.emplace_back("submit");
  return plan;
}

ordered_json to_json(const DogState& s) {
  return {{"n_dogs", s.n_dogs}, {"slots", s.slots}, {"solved", s.solved}};
}

} // namespace defuse
