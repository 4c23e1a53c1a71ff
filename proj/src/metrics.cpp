#include "defuse/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>

#include "defuse/error.hpp"

namespace defuse {

std::string RunResult::run_id() const {
  return solver + "/" + expert + "/" + std::string(puzzle_name(puzzle)) + "/" + std::to_string(run_index);
}

RunResult score_run(const Session& s, int run_index) {
  if (!s.terminal()) throw ProtocolError("cannot score a session in progress");
  RunResult r;
  r.puzzle = s.config.puzzle;
  r.seed = s.config.seed;
  r.run_index = run_index;
  r.solver = s.config.solver.label();
  r.expert = s.config.expert.label();
  r.success = s.status == SessionStatus::solved ? 1 : 0;
  r.psr = r.success ? 100.0 : progress(s.state);
  r.mistakes = s.mistakes;
  r.conversation_length = solve_turn(s).value_or(s.config.turn_limit);
  r.status = std::string(status_name(s.status));
  r.fail_reason = s.fail_reason;
  return r;
}

ordered_json to_json(const RunResult& r) {
  ordered_json j = {{"puzzle", puzzle_name(r.puzzle)},
                    {"seed", r.seed},
                    {"run_index", r.run_index},
                    {"solver", r.solver},
                    {"expert", r.expert},
                    {"success", r.success},
                    {"psr", r.psr},
                    {"mistakes", r.mistakes},
                    {"conversation_length", r.conversation_length},
                    {"status", r.status}};
  if (!r.fail_reason.empty()) j["fail_reason"] = r.fail_reason;
  return j;
}

RunResult run_result_from_json(const ordered_json& j) {
  RunResult r;
  try {
    const auto id = parse_puzzle_id(j.at("puzzle").get<std::string>());
    if (!id) throw ConfigError("unknown puzzle in results");
    r.puzzle = *id;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.run_index = j.value("run_index", 0);
    r.solver = j.at("solver").get<std::string>();
    r.expert = j.at("expert").get<std::string>();
    r.success = j.at("success").get<int>();
    r.psr = j.at("psr").get<double>();
    r.mistakes = j.at("mistakes").get<int>();
    r.conversation_length = j.at("conversation_length").get<int>();
    r.status = j.value("status", std::string());
    r.fail_reason = j.value("fail_reason", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("result record: ") + e.what());
  }
  return r;
}

std::vector<RunResult> read_results(std::istream& in) {
  std::vector<RunResult> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(run_result_from_json(ordered_json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("results line: ") + e.what());
    }
  }
  return out;
}

namespace {

// Sorting before summing keeps the mean independent of input order.
double sorted_mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

} // namespace

std::string_view metric_title(Metric m) {
  switch (m) {
  case Metric::psr: return "Average Partial Success Rate";
  case Metric::am: return "Average Number of Mistakes";
  case Metric::acl: return "Average Conversation Length";
  }
  return "?";
}

std::optional<double> cell_value(const AggregateRow& row, PuzzleId id, Metric m) {
  const auto& c = row.cells[static_cast<std::size_t>(id)];
  if (!c) return std::nullopt;
  switch (m) {
  case Metric::psr: return c->psr;
  case Metric::am: return c->am;
  case Metric::acl: return c->acl;
  }
  return std::nullopt;
}

double mean_of_cells(const std::vector<double>& cells) {
  if (cells.empty()) throw ConfigError("mean of no cells");
  double sum = 0.0;
  for (double c : cells) sum += c;
  return sum / static_cast<double>(cells.size());
}

std::optional<double> overall(const AggregateRow& row, Metric m) {
  std::vector<double> cells;
  for (auto id : kAllPuzzles)
    if (auto v = cell_value(row, id, m)) cells.push_back(*v);
  if (cells.empty()) return std::nullopt;
  return mean_of_cells(cells);
}

AggregateTable aggregate(const std::vector<RunResult>& results) {
  struct Acc {
    std::vector<double> psr, am, acl;
  };
  std::map<std::pair<std::string, std::string>, std::array<Acc, 10>> groups;
  for (const auto& r : results) {
    auto& acc = groups[{r.solver, r.expert}][static_cast<std::size_t>(r.puzzle)];
    acc.psr.push_back(r.psr);
    acc.am.push_back(r.mistakes);
    acc.acl.push_back(r.conversation_length);
  }
  AggregateTable t;
  for (const auto& [key, cells] : groups) {
    AggregateRow row{key.first, key.second, {}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].psr.empty()) continue;
      row.cells[i] = CellStats{static_cast<int>(cells[i].psr.size()), sorted_mean(cells[i].psr),
                               sorted_mean(cells[i].am), sorted_mean(cells[i].acl)};
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_value(double v, Metric m) {
  char buf[32];
  if (m == Metric::psr)
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

namespace {

std::vector<std::vector<std::string>> table_cells(const AggregateTable& t, Metric m) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> header = {"Solver", "Expert"};
  for (auto id : kAllPuzzles) header.emplace_back(puzzle_title(id));
  header.emplace_back("Overall");
  out.push_back(header);
  for (const auto& row : t.rows) {
    std::vector<std::string> line = {row.solver, row.expert};
    for (auto id : kAllPuzzles) {
      const auto v = cell_value(row, id, m);
      line.push_back(v ? format_value(*v, m) : "-");
    }
    const auto o = overall(row, m);
    line.push_back(o ? format_value(*o, m) : "-");
    out.push_back(line);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string table_text(const AggregateTable& t, Metric m) {
  const auto cells = table_cells(t, m);
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  out << metric_title(m) << (m == Metric::psr ? " \u2191" : " \u2193") << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      if (i) out << "  ";
      if (i < 2)
        out << std::left << std::setw(static_cast<int>(width[i])) << cells[r][i];
      else
        out << std::right << std::setw(static_cast<int>(width[i])) << cells[r][i];
    }
    out << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      out << std::string(total - 2, '-') << "\n";
    }
  }
  return out.str();
}

std::string table_csv(const AggregateTable& t, Metric m) {
  std::ostringstream out;
  for (const auto& line : table_cells(t, m)) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << csv_field(line[i]);
    out << "\n";
  }
  return out.str();
}

std::vector<int> detect_repetition_loops(const std::vector<TurnRecord>& transcript) {
  std::set<std::pair<std::string, std::string>> mistaken;
  std::vector<int> flagged;
  for (const auto& t : transcript) {
    if (t.role != Role::solver) continue;
    bool flag = false;
    for (std::size_t i = 0; i < t.parsed_actions.size() && i < t.outcomes.size(); ++i) {
      if (!counts_as_mistake(t.outcomes[i].kind)) continue;
      std::pair<std::string, std::string> key{t.state_digest, t.parsed_actions[i]};
      if (mistaken.count(key)) flag = true;
      mistaken.insert(std::move(key));
    }
    if (flag) flagged.push_back(t.turn_index);
  }
  return flagged;
}

std::string_view category_name(ErrorCategory c) {
  switch (c) {
  case ErrorCategory::roleplay: return "roleplay";
  case ErrorCategory::misinterpretation: return "misinterpretation";
  case ErrorCategory::repetition_loop: return "repetition_loop";
  case ErrorCategory::miscommunication: return "miscommunication";
  }
  return "?";
}

std::optional<ErrorCategory> parse_category(std::string_view s) {
  for (auto c : {ErrorCategory::roleplay, ErrorCategory::misinterpretation, ErrorCategory::repetition_loop,
                 ErrorCategory::miscommunication})
    if (category_name(c) == s) return c;
  return std::nullopt;
}

ordered_json to_json(const ErrorAnnotation& a) {
  return {{"run_id", a.run_id}, {"turn_index", a.turn_index}, {"category", category_name(a.category)}, {"note", a.note}};
}

ErrorAnnotation annotation_from_json(const ordered_json& j) {
  ErrorAnnotation a;
  try {
    a.run_id = j.at("run_id").get<std::string>();
    a.turn_index = j.at("turn_index").get<int>();
    const auto c = parse_category(j.at("category").get<std::string>());
    if (!c) throw ConfigError("unknown error category: " + j.at("category").get<std::string>());
    a.category = *c;
    a.note = j.value("note", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("annotation: ") + e.what());
  }
  return a;
}

void AnnotationStore::append(const std::vector<ErrorAnnotation>& items, const std::vector<std::string>& known_runs) {
  const std::set<std::string> known(known_runs.begin(), known_runs.end());
  for (const auto& a : items)
    if (!known.count(a.run_id)) throw ConfigError("unknown run: " + a.run_id);
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw ConfigError("cannot write " + path_);
  for (const auto& a : items) out << to_json(a).dump() << "\n";
}

std::vector<ErrorAnnotation> AnnotationStore::load() const {
  std::vector<ErrorAnnotation> out;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      out.push_back(annotation_from_json(ordered_json::parse(line)));
  return out;
}

std::map<ErrorCategory, int> category_histogram(const std::vector<ErrorAnnotation>& items) {
  std::map<ErrorCategory, int> h;
  for (const auto& a : items) ++h[a.category];
  return h;
}

std::string histogram_text(const std::map<ErrorCategory, int>& h) {
  int total = 0;
  for (const auto& [c, n] : h) total += n;
  std::ostringstream out;
  for (auto c : {ErrorCategory::roleplay, ErrorCategory::misinterpretation, ErrorCategory::repetition_loop,
                 ErrorCategory::miscommunication}) {
    const auto it = h.find(c);
    const int n = it == h.end() ? 0 : it->second;
    char pct[16];
    std::snprintf(pct, sizeof pct, "%5.1f%%", total ? 100.0 * n / total : 0.0);
    out << std::left << std::setw(18) << category_name(c) << std::right << std::setw(5) << n << "  " << pct << "\n";
  }
  return out.str();
}

std::vector<int> unlabeled_repetitions(const std::string& run_id, const std::vector<TurnRecord>& transcript,
                                       const std::vector<ErrorAnnotation>& items) {
  std::set<int> labeled;
  for (const auto& a : items)
    if (a.run_id == run_id && a.category == ErrorCategory::repetition_loop) labeled.insert(a.turn_index);
  std::vector<int> out;
  for (int t : detect_repetition_loops(transcript))
    if (!labeled.count(t)) out.push_back(t);
  return out;
}

} // namespace defuse
