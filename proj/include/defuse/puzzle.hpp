#pragma once

#include <variant>

#include "defuse/puzzles/button.hpp"
#include "defuse/puzzles/color.hpp"
#include "defuse/puzzles/dog.hpp"
#include "defuse/puzzles/keypad.hpp"
#include "defuse/puzzles/led.hpp"
#include "defuse/puzzles/maze.hpp"
#include "defuse/puzzles/memory.hpp"
#include "defuse/puzzles/password.hpp"
#include "defuse/puzzles/who.hpp"
#include "defuse/puzzles/wire.hpp"

namespace defuse {

/// Alternatives are ordered like PuzzleId.
using PuzzleVariant = std::variant<ButtonState, DogState, WireState, WhoState, LedState, MemoryState, KeypadState,
                                   PasswordState, ColorState, MazeState>;

struct PuzzleState {
  PuzzleVariant data;
  int strikes = 0;

  PuzzleId id() const { return static_cast<PuzzleId>(data.index()); }
  bool solved() const;
};

/// Regenerates on derive_seed(seed, {attempt}) until the validator passes.
/// Throws GenerationError after params.max_tries attempts.
PuzzleState generate(PuzzleId id, std::uint64_t seed, const GenParams& params = {});

bool validate(const PuzzleState& s);
std::vector<std::string> available_actions(const PuzzleState& s);
/// Applies one token; strikes grow on mistake and reset outcomes.
StepResult apply_token(PuzzleState& s, std::string_view token, int clock);
double progress(const PuzzleState& s);
/// Action sequence that solves the puzzle from here, assuming one action per
/// turn with the clock dropping by `decrement` between turns.
std::vector<std::string> oracle_actions(const PuzzleState& s, int clock, int decrement);

/// Full state (solution fields included) for persistence and digests.
ordered_json to_json(const PuzzleState& s);
/// FNV-1a 64 over the serialized puzzle data, lowercase hex. Strikes are
/// excluded so a repeated mistake sees the same digest.
std::string state_digest(const PuzzleState& s);

} // namespace defuse
