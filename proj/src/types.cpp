#include "defuse/types.hpp"

#include <stdexcept>

namespace defuse {

namespace {

constexpr std::array<std::string_view, 10> kNames = {"button", "dog",    "wire",     "who",   "led",
                                                     "memory", "keypad", "password", "color", "maze"};
constexpr std::array<std::string_view, 10> kTitles = {"Button", "Dog",    "Wire",     "Who",   "LED",
                                                      "Memory", "Keypad", "Password", "Color", "Maze"};

} // namespace

std::string_view puzzle_name(PuzzleId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::string_view puzzle_title(PuzzleId id) { return kTitles.at(static_cast<std::size_t>(id)); }

std::optional<PuzzleId> parse_puzzle_id(std::string_view name) {
  for (auto id : kAllPuzzles)
    if (puzzle_name(id) == name) return id;
  return std::nullopt;
}

std::string_view capability_tag(Capability c) {
  switch (c) {
  case Capability::memory_recall: return "MR";
  case Capability::multimodal_grounding: return "MG";
  case Capability::multi_step_reasoning: return "MSR";
  case Capability::realtime: return "RT";
  }
  return "?";
}

const PuzzleMeta& puzzle_meta(PuzzleId id) {
  using C = Capability;
  static const std::array<PuzzleMeta, 10> table = {{
      {PuzzleId::button, {C::realtime}, true, false},
      {PuzzleId::dog, {C::realtime}, true, false},
      {PuzzleId::wire, {C::multimodal_grounding}, false, false},
      {PuzzleId::who, {C::multimodal_grounding}, false, false},
      {PuzzleId::led, {C::memory_recall, C::multi_step_reasoning}, false, true},
      {PuzzleId::memory, {C::memory_recall, C::multi_step_reasoning}, false, true},
      {PuzzleId::keypad, {C::multimodal_grounding, C::multi_step_reasoning}, false, true},
      {PuzzleId::password, {C::multimodal_grounding, C::multi_step_reasoning}, false, true},
      {PuzzleId::color, {C::memory_recall, C::multi_step_reasoning}, false, true},
      {PuzzleId::maze, {C::multimodal_grounding, C::multi_step_reasoning}, false, true},
  }};
  return table.at(static_cast<std::size_t>(id));
}

std::string_view role_name(Role r) { return r == Role::solver ? "solver" : "expert"; }

std::optional<Role> parse_role(std::string_view name) {
  if (name == "solver") return Role::solver;
  if (name == "expert") return Role::expert;
  return std::nullopt;
}

std::string_view outcome_name(OutcomeKind k) {
  switch (k) {
  case OutcomeKind::correct: return "correct";
  case OutcomeKind::mistake: return "mistake";
  case OutcomeKind::solved: return "solved";
  case OutcomeKind::reset: return "reset";
  case OutcomeKind::noop: return "noop";
  }
  return "?";
}

std::optional<OutcomeKind> parse_outcome(std::string_view name) {
  for (auto k : {OutcomeKind::correct, OutcomeKind::mistake, OutcomeKind::solved, OutcomeKind::reset,
                 OutcomeKind::noop})
    if (outcome_name(k) == name) return k;
  return std::nullopt;
}

} // namespace defuse
