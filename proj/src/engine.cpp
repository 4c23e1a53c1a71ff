#include "defuse/engine.hpp"

#include <istream>
#include <ostream>

#include "defuse/clock.hpp"
#include "defuse/error.hpp"
#include "defuse/render.hpp"

namespace defuse {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<ChatMessage> chat_history(const Session& s) {
  std::vector<ChatMessage> out;
  out.reserve(s.transcript.size());
  for (const auto& t : s.transcript) out.push_back({t.turn_index, t.role, t.message_text});
  return out;
}

} // namespace

void validate_config(const SessionConfig& c) {
  if (c.turn_limit < 1) throw ConfigError("turn_limit must be at least 1");
  if (c.clock_start < 1) throw ConfigError("clock_start must be positive");
  if (c.clock_decrement < 1 || c.clock_decrement % 10 == 0)
    throw ConfigError("clock_decrement must be positive and not a multiple of 10");
  if (c.gen.max_tries < 1) throw ConfigError("max_tries must be positive");
}

std::string_view status_name(SessionStatus s) {
  switch (s) {
  case SessionStatus::in_progress: return "in_progress";
  case SessionStatus::solved: return "solved";
  case SessionStatus::failed_turn_limit: return "failed_turn_limit";
  case SessionStatus::failed_clock: return "failed_clock";
  case SessionStatus::failed_agent: return "failed_agent";
  }
  return "?";
}

std::optional<SessionStatus> parse_status(std::string_view s) {
  for (auto v : {SessionStatus::in_progress, SessionStatus::solved, SessionStatus::failed_turn_limit,
                 SessionStatus::failed_clock, SessionStatus::failed_agent})
    if (status_name(v) == s) return v;
  return std::nullopt;
}

Role Session::next_role() const {
  if (transcript.empty()) return Role::solver;
  return transcript.back().role == Role::solver ? Role::expert : Role::solver;
}

Session create_session(const SessionConfig& config) {
  validate_config(config);
  Session s;
  s.config = config;
  s.state = generate(config.puzzle, config.seed, config.gen);
  s.clock_remaining = config.clock_start;
  return s;
}

Observation observe(const Session& s, Role role, bool with_image) {
  if (s.terminal()) {
    return TerminalObservation{s.status, s.turn_index, s.mistakes, progress(s.state), s.fail_reason};
  }
  if (role == Role::expert) {
    return ExpertObservation{s.config.puzzle, s.turn_index, manual_text(s.config.puzzle, &s.state), chat_history(s)};
  }
  SolverObservation o;
  o.puzzle = s.config.puzzle;
  o.turn_index = s.turn_index;
  o.clock_remaining = s.clock_remaining;
  o.clock_display = format_clock(s.clock_remaining);
  o.actions = available_actions(s.state);
  o.view = solver_view(s.state, s.clock_remaining);
  if (with_image) o.png = encode_png(render_image(s.state, s.clock_remaining));
  o.history = chat_history(s);
  for (auto it = s.transcript.rbegin(); it != s.transcript.rend(); ++it) {
    if (it->role == Role::solver) {
      o.last_outcomes = it->outcomes;
      break;
    }
  }
  o.strikes = s.state.strikes;
  return o;
}

ParsedReply parse_solver_reply(std::string_view text, const std::vector<std::string>& available) {
  ParsedReply out;
  out.chat = std::string(text);
  // The prompt shows the separator as a literal "\n", which models sometimes copy.
  std::string lines = out.chat;
  for (auto at = lines.find("\\n"); at != std::string::npos; at = lines.find("\\n", at + 1)) lines.replace(at, 2, "\n");
  text = lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (!line.empty() && index_of(available, line) >= 0) out.actions.emplace_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

ActionOutcome apply_action(Session& s, std::string_view token) {
  if (s.terminal()) return {OutcomeKind::noop, progress(s.state), "session has ended"};
  const auto avail = available_actions(s.state);
  if (index_of(avail, token) < 0) {
    return {OutcomeKind::noop, progress(s.state), std::string(token) + ": action not available"};
  }
  const StepResult r = apply_token(s.state, token, s.clock_remaining);
  if (counts_as_mistake(r.kind)) ++s.mistakes;
  if (s.state.solved()) s.status = SessionStatus::solved;
  return {r.kind, progress(s.state), r.detail};
}

TurnRecord advance_turn(Session& s, Role role, std::string_view text) {
  if (s.terminal()) throw ProtocolError("session has ended (" + std::string(status_name(s.status)) + ")");
  if (role != s.next_role())
    throw ProtocolError("it is the " + std::string(role_name(s.next_role())) + "'s turn");

  TurnRecord rec;
  rec.role = role;
  rec.message_text = std::string(text);
  rec.clock_at_turn = s.clock_remaining;
  rec.state_digest = state_digest(s.state);

  if (role == Role::solver) {
    rec.turn_index = ++s.turn_index;
    rec.parsed_actions = parse_solver_reply(text, available_actions(s.state)).actions;
    for (const auto& a : rec.parsed_actions) {
      if (s.terminal()) {
        rec.outcomes.push_back({OutcomeKind::noop, progress(s.state), a + ": not applied, puzzle already solved"});
        continue;
      }
      rec.outcomes.push_back(apply_action(s, a));
    }
    if (!s.terminal() && s.turn_index >= s.config.turn_limit) s.status = SessionStatus::failed_turn_limit;
  } else {
    rec.turn_index = s.turn_index;
    s.clock_remaining -= s.config.clock_decrement;
    if (s.clock_remaining <= 0) {
      s.clock_remaining = 0;
      s.status = SessionStatus::failed_clock;
    }
  }
  s.transcript.push_back(rec);
  return rec;
}

void fail_session(Session& s, std::string reason) {
  if (s.terminal()) return;
  s.status = SessionStatus::failed_agent;
  s.fail_reason = std::move(reason);
}

std::optional<int> solve_turn(const Session& s) {
  if (s.status != SessionStatus::solved) return std::nullopt;
  for (const auto& t : s.transcript)
    for (const auto& o : t.outcomes)
      if (o.kind == OutcomeKind::solved) return t.turn_index;
  return std::nullopt;
}

ordered_json to_json(const SessionConfig& c) {
  return {{"puzzle", puzzle_name(c.puzzle)},
          {"seed", c.seed},
          {"turn_limit", c.turn_limit},
          {"clock_start", c.clock_start},
          {"clock_decrement", c.clock_decrement},
          {"solver", c.solver},
          {"expert", c.expert},
          {"button_any_color", c.gen.button_any_color}};
}

SessionConfig session_config_from_json(const ordered_json& j) {
  SessionConfig c;
  try {
    const auto name = j.at("puzzle").get<std::string>();
    const auto id = parse_puzzle_id(name);
    if (!id) throw ConfigError("unknown puzzle: " + name);
    c.puzzle = *id;
    c.seed = j.value("seed", std::uint64_t{0});
    c.turn_limit = j.value("turn_limit", 20);
    c.clock_start = j.value("clock_start", 600);
    c.clock_decrement = j.value("clock_decrement", 13);
    if (j.contains("solver")) c.solver = j.at("solver").get<AgentSpec>();
    if (j.contains("expert")) c.expert = j.at("expert").get<AgentSpec>();
    c.gen.button_any_color = j.value("button_any_color", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("session config: ") + e.what());
  }
  validate_config(c);
  return c;
}

ordered_json to_json(const ActionOutcome& o) {
  return {{"kind", outcome_name(o.kind)}, {"progress_after", o.progress_after}, {"detail", o.detail}};
}

ordered_json to_json(const TurnRecord& t) {
  ordered_json outcomes = ordered_json::array();
  for (const auto& o : t.outcomes) outcomes.push_back(to_json(o));
  return {{"turn_index", t.turn_index},       {"role", role_name(t.role)},
          {"message_text", t.message_text},   {"parsed_actions", t.parsed_actions},
          {"outcomes", outcomes},             {"clock_at_turn", t.clock_at_turn},
          {"state_digest", t.state_digest}};
}

TurnRecord turn_record_from_json(const ordered_json& j) {
  TurnRecord t;
  try {
    t.turn_index = j.at("turn_index").get<int>();
    const auto role = parse_role(j.at("role").get<std::string>());
    if (!role) throw ProtocolError("bad role in transcript");
    t.role = *role;
    t.message_text = j.at("message_text").get<std::string>();
    t.parsed_actions = j.at("parsed_actions").get<std::vector<std::string>>();
    for (const auto& o : j.at("outcomes")) {
      const auto kind = parse_outcome(o.at("kind").get<std::string>());
      if (!kind) throw ProtocolError("bad outcome kind in transcript");
      t.outcomes.push_back({*kind, o.at("progress_after").get<double>(), o.at("detail").get<std::string>()});
    }
    t.clock_at_turn = j.at("clock_at_turn").get<int>();
    t.state_digest = j.at("state_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("transcript record: ") + e.what());
  }
  return t;
}

void write_transcript(std::ostream& out, const Session& s) {
  for (const auto& t : s.transcript) out << to_json(t).dump() << '\n';
}

std::vector<TurnRecord> read_transcript(std::istream& in) {
  std::vector<TurnRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    try {
      out.push_back(turn_record_from_json(ordered_json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError(std::string("transcript line: ") + e.what());
    }
  }
  return out;
}

Session replay_session(const SessionConfig& config, const std::vector<TurnRecord>& records,
                       const std::string& fail_reason) {
  Session s = create_session(config);
  for (const auto& r : records) {
    const TurnRecord got = advance_turn(s, r.role, r.message_text);
    if (to_json(got) != to_json(r))
      throw ProtocolError("replay diverged at turn " + std::to_string(r.turn_index));
  }
  if (!fail_reason.empty()) fail_session(s, fail_reason);
  return s;
}

} // namespace defuse
