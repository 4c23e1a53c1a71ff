#include "defuse/sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "defuse/agents.hpp"
#include "defuse/error.hpp"

namespace defuse {

namespace fs = std::filesystem;

SweepConfig sweep_config_from_json(const ordered_json& j) {
  SweepConfig c;
  try {
    if (j.contains("puzzles")) {
      c.puzzles.clear();
      for (const auto& p : j.at("puzzles")) {
        const auto id = parse_puzzle_id(p.get<std::string>());
        if (!id) throw ConfigError("unknown puzzle: " + p.get<std::string>());
        c.puzzles.push_back(*id);
      }
    }
    c.runs = j.value("runs", c.runs);
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("solver")) c.solver = j.at("solver").get<AgentSpec>();
    if (j.contains("expert")) c.expert = j.at("expert").get<AgentSpec>();
    c.turn_limit = j.value("turn_limit", c.turn_limit);
    c.clock_start = j.value("clock_start", c.clock_start);
    c.clock_decrement = j.value("clock_decrement", c.clock_decrement);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.parallelism = j.value("parallelism", c.parallelism);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("sweep config: ") + e.what());
  }
  validate_sweep(c);
  return c;
}

ordered_json to_json(const SweepConfig& c) {
  ordered_json j;
  j["puzzles"] = ordered_json::array();
  for (auto p : c.puzzles) j["puzzles"].push_back(puzzle_name(p));
  if (c.seeds.empty())
    j["runs"] = c.runs;
  else
    j["seeds"] = c.seeds;
  j["base_seed"] = c.base_seed;
  j["solver"] = c.solver;
  j["expert"] = c.expert;
  j["turn_limit"] = c.turn_limit;
  j["clock_start"] = c.clock_start;
  j["clock_decrement"] = c.clock_decrement;
  j["output_dir"] = c.output_dir;
  j["parallelism"] = c.parallelism;
  return j;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return sweep_config_from_json(ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate_sweep(const SweepConfig& c) {
  if (c.puzzles.empty()) throw ConfigError("sweep has no puzzles");
  if (c.seeds.empty() && c.runs < 1) throw ConfigError("runs must be at least 1");
  if (c.parallelism < 1) throw ConfigError("parallelism must be at least 1");
  if (c.output_dir.empty()) throw ConfigError("output_dir is empty");
  for (const auto* a : {&c.solver, &c.expert}) {
    if (a->kind == AgentKind::human) throw ConfigError("sweeps cannot use human agents");
    if (a->kind == AgentKind::remote_model && !a->endpoint) throw ConfigError("remote agent without endpoint");
  }
  SessionConfig probe;
  probe.turn_limit = c.turn_limit;
  probe.clock_start = c.clock_start;
  probe.clock_decrement = c.clock_decrement;
  probe.solver = c.solver;
  probe.expert = c.expert;
  validate_config(probe);
}

std::uint64_t sweep_seed(std::uint64_t base_seed, PuzzleId puzzle, int run_index) {
  return derive_seed(base_seed, {static_cast<std::uint64_t>(puzzle), static_cast<std::uint64_t>(run_index)});
}

std::vector<SweepCell> sweep_cells(const SweepConfig& c) {
  std::vector<SweepCell> cells;
  const int n = c.seeds.empty() ? c.runs : static_cast<int>(c.seeds.size());
  for (auto p : c.puzzles)
    for (int r = 0; r < n; ++r)
      cells.push_back({p, r, c.seeds.empty() ? sweep_seed(c.base_seed, p, r) : c.seeds[static_cast<std::size_t>(r)]});
  return cells;
}

std::string results_path(const SweepConfig& c) { return (fs::path(c.output_dir) / "results.jsonl").string(); }

std::string transcript_path(const SweepConfig& c, const SweepCell& cell) {
  char name[64];
  std::snprintf(name, sizeof name, "%s-%04d.jsonl", std::string(puzzle_name(cell.puzzle)).c_str(), cell.run_index);
  return (fs::path(c.output_dir) / "transcripts" / name).string();
}

namespace {

// Drops a torn final line left by an interrupted run.
std::vector<RunResult> load_complete_results(const std::string& path) {
  if (!fs::exists(path)) return {};
  std::string content;
  {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    content = ss.str();
  }
  const auto end = content.rfind('\n');
  const std::size_t keep = end == std::string::npos ? 0 : end + 1;
  if (keep != content.size()) fs::resize_file(path, keep);
  std::istringstream in(content.substr(0, keep));
  return read_results(in);
}

struct Completed {
  RunResult result;
  std::string transcript;
};

Completed run_cell(const SweepConfig& c, const SweepCell& cell) {
  SessionConfig sc;
  sc.puzzle = cell.puzzle;
  sc.seed = cell.seed;
  sc.turn_limit = c.turn_limit;
  sc.clock_start = c.clock_start;
  sc.clock_decrement = c.clock_decrement;
  sc.solver = c.solver;
  sc.expert = c.expert;
  Session s = create_session(sc);
  auto solver = make_agent(c.solver, Role::solver, cell.seed);
  auto expert = make_agent(c.expert, Role::expert, cell.seed);
  run_episode(s, *solver, *expert);
  std::ostringstream t;
  write_transcript(t, s);
  return {score_run(s, cell.run_index), t.str()};
}

} // namespace

SweepSummary run_sweep(const SweepConfig& c, const std::function<void(const RunResult&)>& on_result) {
  validate_sweep(c);
  fs::create_directories(fs::path(c.output_dir) / "transcripts");
  const std::string rpath = results_path(c);

  std::set<std::pair<PuzzleId, std::uint64_t>> done;
  for (const auto& r : load_complete_results(rpath)) done.insert({r.puzzle, r.seed});

  SweepSummary summary;
  std::vector<SweepCell> todo;
  for (const auto& cell : sweep_cells(c)) {
    if (done.count({cell.puzzle, cell.seed}))
      ++summary.skipped;
    else
      todo.push_back(cell);
  }

  std::ofstream out(rpath, std::ios::app | std::ios::binary);
  if (!out) throw ConfigError("cannot write " + rpath);

  std::mutex mu;
  std::vector<std::optional<Completed>> slots(todo.size());
  std::size_t next_job = 0;
  std::size_t next_write = 0;
  std::exception_ptr error;

  auto flush_ready = [&] {
    while (next_write < slots.size() && slots[next_write]) {
      const auto& done_cell = *slots[next_write];
      {
        std::ofstream t(transcript_path(c, todo[next_write]), std::ios::binary | std::ios::trunc);
        t << done_cell.transcript;
      }
      out << to_json(done_cell.result).dump() << "\n";
      out.flush();
      if (on_result) on_result(done_cell.result);
      ++summary.executed;
      slots[next_write].reset();
      ++next_write;
    }
  };

  auto worker = [&] {
    for (;;) {
      std::size_t job;
      {
        std::lock_guard lock(mu);
        if (error || next_job >= todo.size()) return;
        job = next_job++;
      }
      try {
        auto completed = run_cell(c, todo[job]);
        std::lock_guard lock(mu);
        slots[job] = std::move(completed);
        flush_ready();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const int width = std::min<int>(c.parallelism, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < width; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return summary;
}

} // namespace defuse
