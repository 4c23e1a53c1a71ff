#pragma once

#include <iosfwd>
#include <optional>
#include <variant>

#include "defuse/agent_spec.hpp"
#include "defuse/puzzle.hpp"

namespace defuse {

struct SessionConfig {
  PuzzleId puzzle = PuzzleId::wire;
  std::uint64_t seed = 0;
  int turn_limit = 20;
  int clock_start = 600;
  int clock_decrement = 13;
  AgentSpec solver;
  AgentSpec expert;
  GenParams gen;
};

/// Throws ConfigError when an invariant is broken.
void validate_config(const SessionConfig& c);

enum class SessionStatus : std::uint8_t { in_progress, solved, failed_turn_limit, failed_clock, failed_agent };

std::string_view status_name(SessionStatus s);
std::optional<SessionStatus> parse_status(std::string_view s);

struct ActionOutcome {
  OutcomeKind kind = OutcomeKind::noop;
  double progress_after = 0.0;
  std::string detail;
};

struct TurnRecord {
  int turn_index = 0; // 1-based exchange number; solver and expert of one exchange share it
  Role role = Role::solver;
  std::string message_text;
  std::vector<std::string> parsed_actions;
  std::vector<ActionOutcome> outcomes;
  int clock_at_turn = 0;
  std::string state_digest; // before any action of this turn
};

struct Session {
  SessionConfig config;
  PuzzleState state;
  int clock_remaining = 0;
  int turn_index = 0; // solver turns taken
  std::vector<TurnRecord> transcript;
  int mistakes = 0;
  SessionStatus status = SessionStatus::in_progress;
  std::string fail_reason;

  bool terminal() const { return status != SessionStatus::in_progress; }
  Role next_role() const;
};

Session create_session(const SessionConfig& config);

struct ChatMessage {
  int turn_index = 0;
  Role role = Role::solver;
  std::string text;
};

struct SolverObservation {
  PuzzleId puzzle = PuzzleId::wire;
  int turn_index = 0;
  int clock_remaining = 0;
  std::string clock_display;
  std::vector<std::string> actions;
  ordered_json view;              // structured observation, no solution fields
  std::vector<std::uint8_t> png;  // empty unless requested
  std::vector<ChatMessage> history;
  std::vector<ActionOutcome> last_outcomes;
  int strikes = 0;
};

struct ExpertObservation {
  PuzzleId puzzle = PuzzleId::wire;
  int turn_index = 0;
  std::string manual;
  std::vector<ChatMessage> history;
};

struct TerminalObservation {
  SessionStatus status = SessionStatus::in_progress;
  int turns = 0;
  int mistakes = 0;
  double progress = 0.0;
  std::string fail_reason;
};

using Observation = std::variant<SolverObservation, ExpertObservation, TerminalObservation>;

Observation observe(const Session& s, Role role, bool with_image = true);

struct ParsedReply {
  std::vector<std::string> actions;
  std::string chat; // full text, always forwarded to the expert
};

/// Lines equal (after trimming) to an available token become actions, in order.
ParsedReply parse_solver_reply(std::string_view text, const std::vector<std::string>& available);

/// Throws ProtocolError on a terminal session or a role out of turn.
TurnRecord advance_turn(Session& s, Role role, std::string_view text);

/// Unavailable tokens are noops, never mistakes.
ActionOutcome apply_action(Session& s, std::string_view token);

/// Ends the episode because an agent could not produce a reply.
void fail_session(Session& s, std::string reason);

/// 1-based turn on which the puzzle was solved, if it was.
std::optional<int> solve_turn(const Session& s);

ordered_json to_json(const SessionConfig& c);
SessionConfig session_config_from_json(const ordered_json& j);
ordered_json to_json(const ActionOutcome& o);
ordered_json to_json(const TurnRecord& t);
TurnRecord turn_record_from_json(const ordered_json& j);

/// One TurnRecord per line.
void write_transcript(std::ostream& out, const Session& s);
std::vector<TurnRecord> read_transcript(std::istream& in);

/// Recreates a session by replaying recorded messages through advance_turn.
/// Throws ProtocolError if the replay does not reproduce the records.
Session replay_session(const SessionConfig& config, const std::vector<TurnRecord>& records,
                       const std::string& fail_reason = {});

} // namespace defuse
