#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

inline constexpr int kDogSlots = 9;
inline constexpr int kMaxDogs = 4;

struct DogState {
  int n_dogs = 0;
  /// Occupied slots of the 3x3 picture layout, one per dog.
  std::vector<int> slots;
  bool solved = false;
};

int dog_target_digit(int n_dogs);

DogState generate_dog(Rng& rng, const GenParams& params);
bool validate(const DogState& s);
std::vector<std::string> actions(const DogState& s);
StepResult apply(DogState& s, std::string_view token, int clock);
double progress(const DogState& s);
std::vector<std::string> oracle_plan(const DogState& s, int clock, int decrement);
ordered_json to_json(const DogState& s);

} // namespace defuse
