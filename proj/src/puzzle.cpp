#include "defuse/puzzle.hpp"

#include <cstdio>

#include "defuse/error.hpp"

namespace defuse {

namespace {

PuzzleVariant make(PuzzleId id, Rng& rng, const GenParams& p) {
  switch (id) {
  case PuzzleId::button: return generate_button(rng, p);
  case PuzzleId::dog: return generate_dog(rng, p);
  case PuzzleId::wire: return generate_wire(rng, p);
  case PuzzleId::who: return generate_who(rng, p);
  case PuzzleId::led: return generate_led(rng, p);
  case PuzzleId::memory: return generate_memory(rng, p);
  case PuzzleId::keypad: return generate_keypad(rng, p);
  case PuzzleId::password: return generate_password(rng, p);
  case PuzzleId::color: return generate_color(rng, p);
  case PuzzleId::maze: return generate_maze(rng, p);
  }
  throw GenerationError("unknown puzzle");
}

} // namespace

bool PuzzleState::solved() const {
  return std::visit([](const auto& st) { return st.solved; }, data);
}

PuzzleState generate(PuzzleId id, std::uint64_t seed, const GenParams& params) {
  for (int attempt = 0; attempt < params.max_tries; ++attempt) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    PuzzleState s{make(id, rng, params)};
    if (validate(s)) return s;
  }
  throw GenerationError(std::string(puzzle_name(id)) + ": no valid instance after " +
                        std::to_string(params.max_tries) + " tries");
}

bool validate(const PuzzleState& s) {
  return std::visit([](const auto& st) { return validate(st); }, s.data);
}

std::vector<std::string> available_actions(const PuzzleState& s) {
  return std::visit([](const auto& st) { return actions(st); }, s.data);
}

StepResult apply_token(PuzzleState& s, std::string_view token, int clock) {
  StepResult r = std::visit([&](auto& st) { return apply(st, token, clock); }, s.data);
  if (counts_as_mistake(r.kind)) ++s.strikes;
  return r;
}

double progress(const PuzzleState& s) {
  return std::visit([](const auto& st) { return progress(st); }, s.data);
}

std::vector<std::string> oracle_actions(const PuzzleState& s, int clock, int decrement) {
  return std::visit([&](const auto& st) { return oracle_plan(st, clock, decrement); }, s.data);
}

ordered_json to_json(const PuzzleState& s) {
  return {{"puzzle", puzzle_name(s.id())},
          {"strikes", s.strikes},
          {"state", std::visit([](const auto& st) { return to_json(st); }, s.data)}};
}

std::string state_digest(const PuzzleState& s) {
  const std::string text = std::string(puzzle_name(s.id())) + ":" +
                           std::visit([](const auto& st) { return to_json(st); }, s.data).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace defuse
