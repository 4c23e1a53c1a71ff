#pragma once

#include "defuse/puzzles/common.hpp"

namespace defuse {

inline constexpr int kMemoryStages = 5;

/// What was pressed in a completed stage (1-based position, label 1..4).
struct MemoryPress {
  int position = 0;
  int label = 0;
};

struct MemoryTarget {
  enum class By : std::uint8_t { position, label } by = By::position;
  int value = 0;

  friend bool operator==(const MemoryTarget&, const MemoryTarget&) = default;
};

/// The manual's per-stage rule. `history` holds stages 1..stage-1.
/// Throws RuleError when a referenced stage is missing.
MemoryTarget memory_target(int stage, int display, const std::vector<MemoryPress>& history);

std::string memory_press_token(int position);

struct MemoryState {
  std::array<int, kMemoryStages> displays{};
  /// labels[stage][position], positions left to right.
  std::array<std::array<int, 4>, kMemoryStages> labels{};
  int stage = 1;
  std::vector<MemoryPress> history;
  int best_stage_completed = 0;
  bool solved = false;

  /// 1-based position the current stage's rule selects.
  int target_position() const;
};

MemoryState generate_memory(Rng& rng, const GenParams& params);
bool validate(const MemoryState& s);
std::vector<std::string> actions(const MemoryState& s);
StepResult apply(MemoryState& s, std::string_view token, int clock);
double progress(const MemoryState& s);
std::vector<std::string> oracle_plan(const MemoryState& s, int clock, int decrement);
ordered_json to_json(const MemoryState& s);

} // namespace defuse
