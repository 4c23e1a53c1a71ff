#include <cstdlib>
#include <sstream>

#include "defuse/agents.hpp"
#include "defuse/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defuse;

namespace {

Session session_for(PuzzleId id, std::uint64_t seed = 11) {
  SessionConfig c;
  c.puzzle = id;
  c.seed = seed;
  return create_session(c);
}

EndpointConfig endpoint() {
  EndpointConfig e;
  e.base_url = "http://127.0.0.1:9/v1/";
  e.model = "test-model";
  e.retries = 3;
  return e;
}

HttpResponse ok(const std::string& content) {
  nlohmann::json j = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
  return {200, j.dump(), ""};
}

} // namespace

TEST_CASE("random_action draws uniformly") {
  Rng rng(5);
  const std::vector<std::string> one = {"only"};
  for (int i = 0; i < 20; ++i) CHECK(random_action(one, rng) == "only");
  CHECK_THROWS_AS(random_action({}, rng), AgentError);

  const std::vector<std::string> four = {"a", "b", "c", "d"};
  std::map<std::string, int> counts;
  for (int i = 0; i < 10000; ++i) ++counts[random_action(four, rng)];
  for (const auto& a : four) {
    const double f = counts[a] / 10000.0;
    CHECK(f >= 0.23);
    CHECK(f <= 0.27);
  }
}

TEST_CASE("random agents are reproducible and never chat") {
  auto s = session_for(PuzzleId::button);
  RandomAgent a(3), b(3);
  const auto ctx = make_context(s, Role::solver, false);
  for (int i = 0; i < 20; ++i) {
    const auto x = a.next_message(ctx);
    CHECK(x == b.next_message(ctx));
    CHECK(std::find(ctx.solver->actions.begin(), ctx.solver->actions.end(), x) != ctx.solver->actions.end());
  }
  advance_turn(s, Role::solver, "hello");
  CHECK(a.next_message(make_context(s, Role::expert, false)) == "I cannot help with that.");
}

TEST_CASE("random solver skips the wait token") {
  auto s = session_for(PuzzleId::button, 2);
  const auto ctx = make_context(s, Role::solver, false);
  RandomAgent a(9);
  for (int i = 0; i < 200; ++i) CHECK(a.next_message(ctx) != "wait");
}

TEST_CASE("contexts are role isolated") {
  auto s = session_for(PuzzleId::wire);
  const auto sc = make_context(s, Role::solver, true);
  CHECK(sc.solver.has_value());
  CHECK_FALSE(sc.expert.has_value());
  CHECK_FALSE(sc.solver->png.empty());
  advance_turn(s, Role::solver, "hi");
  const auto ec = make_context(s, Role::expert, true);
  CHECK(ec.expert.has_value());
  CHECK_FALSE(ec.solver.has_value());
  CHECK(ec.history.size() == 1);

  auto leaked = ec;
  leaked.solver = sc.solver;
  CHECK_THROWS_AS(check_role_isolation(leaked), AgentError);
  auto leaked2 = sc;
  leaked2.expert = ec.expert;
  CHECK_THROWS_AS(check_role_isolation(leaked2), AgentError);
}

TEST_CASE("oracle expert names the wire the rules pick") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = session_for(PuzzleId::wire, seed);
    OracleSolver solver;
    OracleExpert expert;
    advance_turn(s, Role::solver, solver.next_message(make_context(s, Role::solver, true)));
    const auto reply = expert.next_message(make_context(s, Role::expert, false));
    const auto& w = std::get<WireState>(s.state.data);
    std::vector<std::string> names;
    for (auto c : w.wires) names.emplace_back(wire_color_name(c));
    const int k = oracle::wire(names, (w.serial.back() - '0') % 2 == 1);
    CHECK(reply.find("cut_wire_" + std::to_string(k)) != std::string::npos);
  }
}

TEST_CASE("oracle pair solves one episode of each puzzle") {
  for (auto id : kAllPuzzles) {
    auto s = session_for(id, 4);
    OracleSolver solver;
    OracleExpert expert;
    run_episode(s, solver, expert);
    CHECK_MESSAGE(s.status == SessionStatus::solved, puzzle_name(id));
    CHECK(s.mistakes == 0);
  }
}

TEST_CASE("a fresh oracle expert can take over mid-episode") {
  for (auto id : kAllPuzzles)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto s = session_for(id, seed);
      OracleSolver solver;
      while (!s.terminal()) {
        if (s.next_role() == Role::solver) {
          advance_turn(s, Role::solver, solver.next_message(make_context(s, Role::solver, true)));
        } else {
          OracleExpert expert;
          advance_turn(s, Role::expert, expert.next_message(make_context(s, Role::expert, false)));
        }
      }
      CHECK_MESSAGE(s.status == SessionStatus::solved, puzzle_name(id), " seed ", seed);
      CHECK(s.mistakes == 0);
    }
}

TEST_CASE("remote agent request shape") {
  auto s = session_for(PuzzleId::wire);
  advance_turn(s, Role::solver, "I see wires");
  advance_turn(s, Role::expert, "describe them");
  ::setenv("DEFUSE_TEST_KEY", "sekrit", 1);
  auto cfg = endpoint();
  cfg.auth_env = "DEFUSE_TEST_KEY";
  std::vector<HttpRequest> seen;
  RemoteAgent agent(cfg, [&](const HttpRequest& r) {
    seen.push_back(r);
    return ok("cut_wire_1");
  });
  CHECK(agent.next_message(make_context(s, Role::solver, agent.wants_image())) == "cut_wire_1");
  REQUIRE(seen.size() == 1);
  CHECK(seen[0].url == "http://127.0.0.1:9/v1/chat/completions");
  CHECK(seen[0].headers.at("Authorization") == "Bearer sekrit");
  const auto body = nlohmann::json::parse(seen[0].body);
  CHECK(body.at("model") == "test-model");
  const auto& msgs = body.at("messages");
  CHECK(msgs.at(0).at("role") == "system");
  CHECK(msgs.at(1).at("role") == "assistant");
  CHECK(msgs.at(2).at("role") == "user");
  const auto& last = msgs.back().at("content");
  REQUIRE(last.is_array());
  CHECK(last.at(1).at("image_url").at("url").get<std::string>().rfind("data:image/png;base64,", 0) == 0);
  CHECK(seen[0].body.find("Manual:") == std::string::npos);
}

TEST_CASE("text-only endpoints get a described image") {
  auto s = session_for(PuzzleId::wire);
  auto cfg = endpoint();
  cfg.supports_images = false;
  std::string body;
  RemoteAgent agent(cfg, [&](const HttpRequest& r) {
    body = r.body;
    return ok("hello");
  });
  CHECK_FALSE(agent.wants_image());
  agent.next_message(make_context(s, Role::solver, agent.wants_image()));
  CHECK(body.find("image_url") == std::string::npos);
  CHECK(body.find("The puzzle image is described below.") != std::string::npos);
  CHECK(body.find(std::get<WireState>(s.state.data).serial) != std::string::npos);
}

TEST_CASE("expert request carries the manual and no image") {
  auto s = session_for(PuzzleId::wire);
  advance_turn(s, Role::solver, "four wires");
  std::string body;
  RemoteAgent agent(endpoint(), [&](const HttpRequest& r) {
    body = r.body;
    return ok("cut the second");
  });
  CHECK(agent.next_message(make_context(s, Role::expert, false)) == "cut the second");
  CHECK(body.find("Manual:") != std::string::npos);
  CHECK(body.find("image_url") == std::string::npos);
  CHECK(body.find("Possible actions") == std::string::npos);
}

TEST_CASE("remote agent retries rate limits with backoff") {
  auto s = session_for(PuzzleId::dog);
  std::vector<std::chrono::milliseconds> sleeps;
  int calls = 0;
  RemoteAgent agent(
      endpoint(),
      [&](const HttpRequest&) {
        ++calls;
        if (calls <= 2) return HttpResponse{429, "", ""};
        return ok("press_button_1");
      },
      [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  CHECK(agent.next_message(make_context(s, Role::solver, true)) == "press_button_1");
  CHECK(agent.attempts() == 3);
  CHECK(sleeps == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500), std::chrono::milliseconds(1000)});
}

TEST_CASE("remote agent gives up after its retries") {
  auto s = session_for(PuzzleId::dog);
  int calls = 0;
  RemoteAgent agent(
      endpoint(),
      [&](const HttpRequest&) {
        ++calls;
        return HttpResponse{0, "", "timeout"};
      },
      [](std::chrono::milliseconds) {});
  CHECK_THROWS_AS(agent.next_message(make_context(s, Role::solver, true)), AgentError);
  CHECK(calls == 4);

  int bad = 0;
  RemoteAgent fatal(
      endpoint(),
      [&](const HttpRequest&) {
        ++bad;
        return HttpResponse{401, "{}", ""};
      },
      [](std::chrono::milliseconds) {});
  CHECK_THROWS_AS(fatal.next_message(make_context(s, Role::solver, true)), AgentError);
  CHECK(bad == 1);

  RemoteAgent garbled(endpoint(), [](const HttpRequest&) { return HttpResponse{200, "not json", ""}; });
  CHECK_THROWS_AS(garbled.next_message(make_context(s, Role::solver, true)), AgentError);
}

TEST_CASE("a failing agent ends the episode as failed_agent") {
  auto s = session_for(PuzzleId::wire);
  RandomAgent solver(1);
  RemoteAgent expert(
      endpoint(), [](const HttpRequest&) { return HttpResponse{0, "", "timeout"}; }, [](std::chrono::milliseconds) {});
  run_episode(s, solver, expert);
  if (s.status != SessionStatus::solved) {
    CHECK(s.status == SessionStatus::failed_agent);
    CHECK(s.fail_reason.find("expert agent failed") != std::string::npos);
    CHECK(s.transcript.size() == 1);
  }
}

TEST_CASE("human agent reads until a lone dot") {
  auto s = session_for(PuzzleId::wire);
  std::istringstream in("I see three wires\ncut_wire_2\n.\nleftover\n");
  std::ostringstream out;
  HumanAgent h(in, out);
  CHECK(h.next_message(make_context(s, Role::solver, false)) == "I see three wires\ncut_wire_2");
  CHECK(out.str().find("cut_wire_1") != std::string::npos);
  CHECK(h.next_message(make_context(s, Role::solver, false)) == "leftover");
  CHECK_THROWS_AS(h.next_message(make_context(s, Role::solver, false)), AgentError);

  advance_turn(s, Role::solver, "hello");
  std::istringstream in2("cut the first\n.\n");
  std::ostringstream out2;
  HumanAgent e(in2, out2);
  CHECK(e.next_message(make_context(s, Role::expert, false)) == "cut the first");
  CHECK(out2.str().find("If there are no red wires") != std::string::npos);
}

TEST_CASE("make_agent builds the requested kind") {
  AgentSpec r;
  r.kind = AgentKind::random;
  auto a = make_agent(r, Role::solver, 42);
  auto b = make_agent(r, Role::solver, 42);
  auto s = session_for(PuzzleId::keypad);
  const auto ctx = make_context(s, Role::solver, false);
  for (int i = 0; i < 10; ++i) CHECK(a->next_message(ctx) == b->next_message(ctx));

  AgentSpec o;
  o.kind = AgentKind::oracle;
  CHECK(dynamic_cast<OracleSolver*>(make_agent(o, Role::solver, 1).get()) != nullptr);
  CHECK(dynamic_cast<OracleExpert*>(make_agent(o, Role::expert, 1).get()) != nullptr);

  AgentSpec m;
  m.kind = AgentKind::remote_model;
  CHECK_THROWS(make_agent(m, Role::solver, 1));
  m.endpoint = endpoint();
  CHECK(dynamic_cast<RemoteAgent*>(make_agent(m, Role::expert, 1).get()) != nullptr);
}
