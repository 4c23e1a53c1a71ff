#include "defuse/puzzles/memory.hpp"

#include <algorithm>

#include "defuse/error.hpp"

namespace defuse {

namespace {

MemoryTarget pos(int k) { return {MemoryTarget::By::position, k}; }
MemoryTarget lab(int k) { return {MemoryTarget::By::label, k}; }

const MemoryPress& stage_press(const std::vector<MemoryPress>& history, int stage) {
  if (stage < 1 || static_cast<int>(history.size()) < stage)
    throw RuleError("memory history has no entry for stage " + std::to_string(stage));
  return history[stage - 1];
}

} // namespace

MemoryTarget memory_target(int stage, int display, const std::vector<MemoryPress>& history) {
  if (display < 1 || display > 4) throw RuleError("memory display must be 1-4");
  auto pos_of = [&](int st) { return pos(stage_press(history, st).position); };
  auto label_of = [&](int st) { return lab(stage_press(history, st).label); };
  switch (stage) {
  case 1: {
    static constexpr std::array<int, 4> p = {2, 2, 3, 4};
    return pos(p[display - 1]);
  }
  case 2:
    switch (display) {
    case 1: return lab(4);
    case 2: return pos_of(1);
    case 3: return pos(1);
    default: return pos_of(1);
    }
  case 3:
    switch (display) {
    case 1: return label_of(2);
    case 2: return label_of(1);
    case 3: return pos(3);
    default: return lab(4);
    }
  case 4:
    switch (display) {
    case 1: return pos_of(1);
    case 2: return pos(1);
    default: return pos_of(2);
    }
  case 5:
    switch (display) {
    case 1: return label_of(1);
    case 2: return label_of(2);
    case 3: return label_of(4);
    default: return label_of(3);
    }
  default: throw RuleError("memory stage must be 1-5");
  }
}

std::string memory_press_token(int position) { return "press_button_" + std::to_string(position); }

int MemoryState::target_position() const {
  const auto target = memory_target(stage, displays[stage - 1], history);
  if (target.by == MemoryTarget::By::position) return target.value;
  const auto& row = labels[stage - 1];
  return static_cast<int>(std::find(row.begin(), row.end(), target.value) - row.begin()) + 1;
}

MemoryState generate_memory(Rng& rng, const GenParams&) {
  MemoryState s;
  for (int st = 0; st < kMemoryStages; ++st) {
    s.displays[st] = rng.uniform(1, 4);
    std::vector<int> perm = {1, 2, 3, 4};
    rng.shuffle(perm);
    std::copy(perm.begin(), perm.end(), s.labels[st].begin());
  }
  return s;
}

bool validate(const MemoryState& s) {
  for (int st = 0; st < kMemoryStages; ++st) {
    if (s.displays[st] < 1 || s.displays[st] > 4) return false;
    auto row = s.labels[st];
    std::sort(row.begin(), row.end());
    if (row != std::array<int, 4>{1, 2, 3, 4}) return false;
  }
  return s.stage == 1 && s.history.empty();
}

std::vector<std::string> actions(const MemoryState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int p = 1; p <= 4; ++p) out.push_back(memory_press_token(p));
  return out;
}

StepResult apply(MemoryState& s, std::string_view token, int) {
  const int index = index_of(actions(s), token);
  if (index < 0) return {OutcomeKind::noop, "action not available"};
  const int position = index + 1;
  const int label = s.labels[s.stage - 1][index];
  const std::string what = "pressed position " + std::to_string(position) + " (label " + std::to_string(label) + ")";
  if (position != s.target_position()) {
    const bool discarded = s.stage > 1;
    s.stage = 1;
    s.history.clear();
    return {discarded ? OutcomeKind::reset : OutcomeKind::mistake, what + ": wrong button, back to stage 1"};
  }
  s.history.push_back({position, label});
  s.best_stage_completed = std::max(s.best_stage_completed, s.stage);
  if (s.stage == kMemoryStages) {
    s.solved = true;
    return {OutcomeKind::solved, what};
  }
  ++s.stage;
  return {OutcomeKind::correct, what + "; stage " + std::to_string(s.stage)};
}

double progress(const MemoryState& s) { return 20.0 * s.best_stage_completed; }

std::vector<std::string> oracle_plan(const MemoryState& s, int clock, int) {
  std::vector<std::string> plan;
  MemoryState sim = s;
  while (!sim.solved) {
    const auto token = memory_press_token(sim.target_position());
    plan.push_back(token);
    apply(sim, token, clock);
  }
  return plan;
}

ordered_json to_json(const MemoryState& s) {
  ordered_json history = ordered_json::array(), labels = ordered_json::array();
  for (const auto& h : s.history) history.push_back({h.position, h.label});
  for (const auto& l : s.labels) labels.push_back(l);
  return {{"displays", s.displays},
          {"labels", labels},
          {"stage", s.stage},
          {"history", history},
          {"best_stage_completed", s.best_stage_completed},
          {"solved", s.solved}};
}

} // namespace defuse
