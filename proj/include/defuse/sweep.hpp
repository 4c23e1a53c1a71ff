#pragma once

#include <functional>

#include "defuse/metrics.hpp"

namespace defuse {

struct SweepConfig {
  std::vector<PuzzleId> puzzles{kAllPuzzles.begin(), kAllPuzzles.end()};
  int runs = 10;
  std::vector<std::uint64_t> seeds; // explicit instance seeds; overrides runs when set
  std::uint64_t base_seed = 0;
  AgentSpec solver;
  AgentSpec expert;
  int turn_limit = 20;
  int clock_start = 600;
  int clock_decrement = 13;
  std::string output_dir = "results";
  int parallelism = 1;
};

SweepConfig sweep_config_from_json(const ordered_json& j);
ordered_json to_json(const SweepConfig& c);
/// Throws ConfigError on unreadable or invalid files.
SweepConfig load_sweep_config(const std::string& path);
void validate_sweep(const SweepConfig& c);

/// Instance seed for one cell; independent of which other puzzles are swept.
std::uint64_t sweep_seed(std::uint64_t base_seed, PuzzleId puzzle, int run_index);

struct SweepCell {
  PuzzleId puzzle = PuzzleId::wire;
  int run_index = 0;
  std::uint64_t seed = 0;
};

/// Puzzle-major order, which is also the order of the results file.
std::vector<SweepCell> sweep_cells(const SweepConfig& c);

std::string results_path(const SweepConfig& c);
std::string transcript_path(const SweepConfig& c, const SweepCell& cell);

struct SweepSummary {
  int executed = 0;
  int skipped = 0;
};

/// Runs every cell missing from the results file. Transcripts go under
/// <output_dir>/transcripts, results are appended to <output_dir>/results.jsonl
/// in cell order regardless of parallelism.
SweepSummary run_sweep(const SweepConfig& c, const std::function<void(const RunResult&)>& on_result = {});

} // namespace defuse
