#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace defuse {

/// The ten puzzles, in the column order used by every report table.
enum class PuzzleId : std::uint8_t { button, dog, wire, who, led, memory, keypad, password, color, maze };

inline constexpr std::array<PuzzleId, 10> kAllPuzzles = {
    PuzzleId::button, PuzzleId::dog,    PuzzleId::wire,     PuzzleId::who,   PuzzleId::led,
    PuzzleId::memory, PuzzleId::keypad, PuzzleId::password, PuzzleId::color, PuzzleId::maze};

std::string_view puzzle_name(PuzzleId id);
/// Column heading used in tables ("Button", "LED", ...).
std::string_view puzzle_title(PuzzleId id);
std::optional<PuzzleId> parse_puzzle_id(std::string_view name);

enum class Capability : std::uint8_t { memory_recall, multimodal_grounding, multi_step_reasoning, realtime };

std::string_view capability_tag(Capability c);

struct PuzzleMeta {
  PuzzleId id;
  std::vector<Capability> tags;
  bool realtime = false;
  bool multi_step = false;
};

const PuzzleMeta& puzzle_meta(PuzzleId id);

enum class Role : std::uint8_t { solver, expert };

std::string_view role_name(Role r);
std::optional<Role> parse_role(std::string_view name);

enum class OutcomeKind : std::uint8_t { correct, mistake, solved, reset, noop };

std::string_view outcome_name(OutcomeKind k);
std::optional<OutcomeKind> parse_outcome(std::string_view name);

inline bool counts_as_mistake(OutcomeKind k) { return k == OutcomeKind::mistake || k == OutcomeKind::reset; }

/// Result of one puzzle transition, before the engine attaches progress.
struct StepResult {
  OutcomeKind kind = OutcomeKind::noop;
  std::string detail;
};

struct GenParams {
  /// Allow non-yellow buttons (identical hold semantics).
  bool button_any_color = false;
  int max_tries = 1000;
};

/// Token every realtime puzzle accepts to let the clock run.
inline constexpr std::string_view kWaitToken = "wait";

} // namespace defuse
