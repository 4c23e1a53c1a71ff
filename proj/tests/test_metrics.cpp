#include <algorithm>
#include <random>
#include <sstream>

#include "defuse/error.hpp"
#include "defuse/metrics.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace defuse;

namespace {

std::string right_wire(const Session& s) {
  const auto& w = std::get<WireState>(s.state.data);
  return "cut_wire_" + std::to_string(wire_to_cut(w.wires, w.serial_last_digit()));
}

RunResult result(PuzzleId id, double psr, int mistakes, int cl, std::string solver = "random",
                 std::string expert = "random") {
  RunResult r;
  r.puzzle = id;
  r.psr = psr;
  r.success = psr == 100.0;
  r.mistakes = mistakes;
  r.conversation_length = cl;
  r.solver = std::move(solver);
  r.expert = std::move(expert);
  r.status = r.success ? "solved" : "failed_turn_limit";
  return r;
}

TurnRecord solver_turn(int idx, const std::string& digest, const std::string& action, OutcomeKind kind) {
  TurnRecord t;
  t.turn_index = idx;
  t.role = Role::solver;
  t.message_text = action;
  t.parsed_actions = {action};
  t.outcomes = {ActionOutcome{kind, 0.0, ""}};
  t.state_digest = digest;
  return t;
}

TurnRecord expert_turn(int idx) {
  TurnRecord t;
  t.turn_index = idx;
  t.role = Role::expert;
  t.message_text = "try again";
  return t;
}

std::vector<TurnRecord> loop_fixture() {
  std::vector<TurnRecord> t;
  t.push_back(solver_turn(1, "aaaa", "press_button_2", OutcomeKind::mistake));
  t.push_back(expert_turn(1));
  t.push_back(solver_turn(2, "aaaa", "press_button_1", OutcomeKind::correct));
  t.push_back(expert_turn(2));
  t.push_back(solver_turn(3, "aaaa", "press_button_2", OutcomeKind::mistake));
  t.push_back(expert_turn(3));
  t.push_back(solver_turn(4, "bbbb", "press_button_2", OutcomeKind::mistake));
  t.push_back(expert_turn(4));
  t.push_back(solver_turn(5, "aaaa", "press_button_2", OutcomeKind::reset));
  return t;
}

} // namespace

TEST_CASE("score_run for a solved wire session") {
  SessionConfig c;
  c.puzzle = PuzzleId::wire;
  c.seed = 8;
  auto s = create_session(c);
  for (int t = 1; t < 7; ++t) {
    advance_turn(s, Role::solver, "still looking");
    advance_turn(s, Role::expert, "describe the wires");
  }
  advance_turn(s, Role::solver, right_wire(s));
  const auto r = score_run(s, 3);
  CHECK(r.success == 1);
  CHECK(r.psr == 100.0);
  CHECK(r.conversation_length == 7);
  CHECK(r.mistakes == 0);
  CHECK(r.status == "solved");
  CHECK(r.run_id() == "random/random/wire/3");
}

TEST_CASE("score_run for a failed session counts the full turn limit") {
  SessionConfig c;
  c.puzzle = PuzzleId::wire;
  auto s = create_session(c);
  CHECK_THROWS_AS(score_run(s), ProtocolError);
  for (int t = 1; t <= 20; ++t) {
    advance_turn(s, Role::solver, "hmm");
    if (!s.terminal()) advance_turn(s, Role::expert, "hmm");
  }
  const auto r = score_run(s);
  CHECK(r.success == 0);
  CHECK(r.psr == 0.0);
  CHECK(r.conversation_length == 20);
  CHECK(r.status == "failed_turn_limit");
}

TEST_CASE("run results round-trip through JSON lines") {
  auto r = result(PuzzleId::maze, 42.5, 3, 20);
  r.seed = 123;
  r.fail_reason = "expert agent failed: timeout";
  std::stringstream buf;
  buf << to_json(r).dump() << "\n\n" << to_json(result(PuzzleId::dog, 100, 0, 2)).dump() << "\n";
  const auto back = read_results(buf);
  REQUIRE(back.size() == 2);
  CHECK(to_json(back[0]) == to_json(r));
  std::stringstream bad("{\"puzzle\":\"nope\"}\n");
  CHECK_THROWS_AS(read_results(bad), ConfigError);
  std::stringstream torn("{\"puzzle\":");
  CHECK_THROWS_AS(read_results(torn), ConfigError);
}

TEST_CASE("eight of ten wire runs solved gives a cell PSR of 80") {
  std::vector<RunResult> rs;
  for (int i = 0; i < 10; ++i) rs.push_back(result(PuzzleId::wire, i < 8 ? 100.0 : 0.0, i < 8 ? 0 : 1, i < 8 ? 1 : 20));
  const auto t = aggregate(rs);
  REQUIRE(t.rows.size() == 1);
  const auto& cell = t.rows[0].cells[static_cast<std::size_t>(PuzzleId::wire)];
  REQUIRE(cell.has_value());
  CHECK(cell->runs == 10);
  CHECK(cell->psr == doctest::Approx(80.0));
  CHECK(cell->am == doctest::Approx(0.2));
  CHECK(cell->acl == doctest::Approx(4.8));
}

TEST_CASE("one run per puzzle: cells equal the run values and Overall is their mean") {
  std::vector<RunResult> rs;
  double sum = 0.0;
  for (auto id : kAllPuzzles) {
    const double psr = 10.0 * static_cast<int>(id);
    sum += psr;
    rs.push_back(result(id, psr, static_cast<int>(id), 20));
  }
  const auto t = aggregate(rs);
  REQUIRE(t.rows.size() == 1);
  for (auto id : kAllPuzzles) CHECK(*cell_value(t.rows[0], id, Metric::psr) == 10.0 * static_cast<int>(id));
  CHECK(*overall(t.rows[0], Metric::psr) == doctest::Approx(sum / 10.0));
  CHECK(*overall(t.rows[0], Metric::am) == doctest::Approx(4.5));

  const auto csv = table_csv(t, Metric::psr);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(std::count(header.begin(), header.end(), ',') == 12);
  CHECK(header.rfind("Solver,Expert,", 0) == 0);
  CHECK(header.substr(header.size() - 8) == ",Overall");
  CHECK(row.rfind("random,random,0,10,20,", 0) == 0);
  CHECK(row.substr(row.size() - 3) == ",45");
}

TEST_CASE("missing cells print a dash and stay out of Overall") {
  std::vector<RunResult> rs = {result(PuzzleId::wire, 100, 0, 1), result(PuzzleId::dog, 50, 2, 20)};
  const auto t = aggregate(rs);
  CHECK(*overall(t.rows[0], Metric::psr) == doctest::Approx(75.0));
  CHECK_FALSE(cell_value(t.rows[0], PuzzleId::maze, Metric::psr).has_value());
  const auto csv = table_csv(t, Metric::am);
  CHECK(csv.find(",-,") != std::string::npos);
  CHECK(csv.find("1.00") != std::string::npos);
  const auto text = table_text(t, Metric::psr);
  CHECK(text.rfind("Average Partial Success Rate", 0) == 0);
  CHECK(text.find(" - ") != std::string::npos);
  CHECK(table_text(t, Metric::acl).rfind("Average Conversation Length", 0) == 0);
  CHECK(table_text(t, Metric::am).rfind("Average Number of Mistakes", 0) == 0);
  CHECK_THROWS_AS(mean_of_cells({}), ConfigError);
}

TEST_CASE("aggregation does not depend on input order") {
  std::mt19937_64 gen(99);
  std::vector<RunResult> rs;
  for (int i = 0; i < 400; ++i) {
    const auto id = kAllPuzzles[gen() % 10];
    rs.push_back(result(id, static_cast<double>(gen() % 10000) / 100.0, static_cast<int>(gen() % 7),
                        1 + static_cast<int>(gen() % 20), gen() % 2 ? "oracle" : "random", "random"));
  }
  const auto base = table_csv(aggregate(rs), Metric::psr) + table_csv(aggregate(rs), Metric::am);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(rs.begin(), rs.end(), gen);
    const auto t = aggregate(rs);
    CHECK(table_csv(t, Metric::psr) + table_csv(t, Metric::am) == base);
    CHECK(t.rows.front().solver == "oracle");
  }
}

TEST_CASE("format_value") {
  CHECK(format_value(66.6, Metric::psr) == "67");
  CHECK(format_value(1.234, Metric::am) == "1.23");
  CHECK(format_value(20, Metric::acl) == "20.00");
}

TEST_CASE("repetition detector flags repeated mistaken pairs") {
  std::vector<TurnRecord> two = {solver_turn(1, "abcd", "cut_wire_2", OutcomeKind::mistake), expert_turn(1),
                                 solver_turn(2, "abcd", "cut_wire_2", OutcomeKind::mistake)};
  CHECK(detect_repetition_loops(two) == std::vector<int>{2});

  std::vector<TurnRecord> moved = {solver_turn(1, "abcd", "cut_wire_2", OutcomeKind::mistake), expert_turn(1),
                                   solver_turn(2, "ffff", "cut_wire_2", OutcomeKind::mistake)};
  CHECK(detect_repetition_loops(moved).empty());

  std::vector<TurnRecord> fine = {solver_turn(1, "abcd", "cut_wire_2", OutcomeKind::correct), expert_turn(1),
                                  solver_turn(2, "abcd", "cut_wire_2", OutcomeKind::mistake)};
  CHECK(detect_repetition_loops(fine).empty());

  CHECK(detect_repetition_loops(loop_fixture()) == std::vector<int>{3, 5});
}

TEST_CASE("annotation store and histogram") {
  testutil::TempDir dir("defuse-ann");
  AnnotationStore store((dir.path / "ann.jsonl").string());
  CHECK(store.load().empty());
  CHECK(histogram_text(category_histogram({})).find("0.0%") != std::string::npos);

  const std::vector<std::string> runs = {"oracle/random/wire/0", "oracle/random/wire/1"};
  std::vector<ErrorAnnotation> items = {
      {runs[0], 3, ErrorCategory::repetition_loop, "same wire again"},
      {runs[0], 4, ErrorCategory::roleplay, ""},
      {runs[1], 1, ErrorCategory::repetition_loop, ""},
      {runs[1], 2, ErrorCategory::miscommunication, "said second, meant third"},
  };
  store.append(items, runs);
  CHECK_THROWS_AS(store.append({{"nobody/x/wire/9", 1, ErrorCategory::roleplay, ""}}, runs), ConfigError);
  const auto back = store.load();
  REQUIRE(back.size() == 4);
  CHECK(back[3].note == "said second, meant third");

  const auto h = category_histogram(back);
  CHECK(h.at(ErrorCategory::repetition_loop) == 2);
  CHECK(h.at(ErrorCategory::roleplay) == 1);
  CHECK(h.count(ErrorCategory::misinterpretation) == 0);
  const auto text = histogram_text(h);
  CHECK(text.find("repetition_loop") != std::string::npos);
  CHECK(text.find("50.0%") != std::string::npos);

  CHECK(unlabeled_repetitions(runs[0], loop_fixture(), back) == std::vector<int>{5});
  CHECK(parse_category("roleplay") == ErrorCategory::roleplay);
  CHECK_FALSE(parse_category("typo").has_value());
  CHECK_THROWS_AS(annotation_from_json(ordered_json{{"run_id", "x"}, {"turn_index", 1}, {"category", "nope"}}),
                  ConfigError);
}
