#pragma once

#include <map>

#include "defuse/engine.hpp"

namespace defuse {

struct RunResult {
  PuzzleId puzzle = PuzzleId::wire;
  std::uint64_t seed = 0;
  int run_index = 0;
  std::string solver;
  std::string expert;
  int success = 0;
  double psr = 0.0;
  int mistakes = 0;
  int conversation_length = 0;
  std::string status;
  std::string fail_reason;

  /// "<solver>/<expert>/<puzzle>/<run_index>", the key annotations refer to.
  std::string run_id() const;
};

/// Throws ProtocolError for a session still in progress.
RunResult score_run(const Session& s, int run_index = 0);

ordered_json to_json(const RunResult& r);
RunResult run_result_from_json(const ordered_json& j);
std::vector<RunResult> read_results(std::istream& in);

struct CellStats {
  int runs = 0;
  double psr = 0.0;
  double am = 0.0;
  double acl = 0.0;
};

struct AggregateRow {
  std::string solver;
  std::string expert;
  std::array<std::optional<CellStats>, 10> cells; // kAllPuzzles order; empty = missing
};

enum class Metric : std::uint8_t { psr, am, acl };

std::string_view metric_title(Metric m);
std::optional<double> cell_value(const AggregateRow& row, PuzzleId id, Metric m);
/// Unweighted mean of the per-puzzle means that are present.
std::optional<double> overall(const AggregateRow& row, Metric m);
/// Unweighted mean of already-averaged cells.
double mean_of_cells(const std::vector<double>& cells);

struct AggregateTable {
  std::vector<AggregateRow> rows; // sorted by (solver, expert)
};

/// Order of `results` never changes the output.
AggregateTable aggregate(const std::vector<RunResult>& results);

/// PSR as integers, AM and ACL to two decimals; missing cells print "-".
std::string format_value(double v, Metric m);
std::string table_text(const AggregateTable& t, Metric m);
std::string table_csv(const AggregateTable& t, Metric m);

/// Solver turns repeating an earlier mistaken (state_digest, action) pair
/// with another mistake; returns their turn indices.
std::vector<int> detect_repetition_loops(const std::vector<TurnRecord>& transcript);

enum class ErrorCategory : std::uint8_t { roleplay, misinterpretation, repetition_loop, miscommunication };

std::string_view category_name(ErrorCategory c);
std::optional<ErrorCategory> parse_category(std::string_view s);

struct ErrorAnnotation {
  std::string run_id;
  int turn_index = 0;
  ErrorCategory category = ErrorCategory::miscommunication;
  std::string note;
};

ordered_json to_json(const ErrorAnnotation& a);
ErrorAnnotation annotation_from_json(const ordered_json& j);

/// Append-only JSONL file of annotations. Appends are serialized.
class AnnotationStore {
public:
  explicit AnnotationStore(std::string path) : path_(std::move(path)) {}
  /// Throws ConfigError if an annotation names a run not in `known_runs`.
  void append(const std::vector<ErrorAnnotation>& items, const std::vector<std::string>& known_runs);
  std::vector<ErrorAnnotation> load() const;

private:
  std::string path_;
};

std::map<ErrorCategory, int> category_histogram(const std::vector<ErrorAnnotation>& items);
std::string histogram_text(const std::map<ErrorCategory, int>& h);

/// Detector hits on a run not covered by a repetition_loop annotation.
std::vector<int> unlabeled_repetitions(const std::string& run_id, const std::vector<TurnRecord>& transcript,
                                       const std::vector<ErrorAnnotation>& items);

} // namespace defuse
