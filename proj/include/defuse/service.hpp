#pragma once

#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "defuse/agents.hpp"

namespace httplib {
class Server;
}

namespace defuse {

enum class EventKind : std::uint8_t { turn_added, state_changed, session_ended };

std::string_view event_kind_name(EventKind k);

struct EventFrame {
  int sequence = 0;
  EventKind kind = EventKind::turn_added;
  ordered_json payload;
};

ordered_json to_json(const EventFrame& f);
EventFrame event_frame_from_json(const ordered_json& j);

struct ServiceOptions {
  std::string data_dir;      // empty: no persistence
  std::size_t max_active = 256;
};

struct SessionHandle {
  std::string session_id;
  std::string created_at;
  SessionConfig config;
  bool solver_human = false;
  bool expert_human = false;
  bool solver_claimed = false;
  bool expert_claimed = false;
  SessionStatus status = SessionStatus::in_progress;
};

ordered_json to_json(const SessionHandle& h);

/// Role-scoped JSON views. The solver view never carries the manual and the
/// expert view never carries image data.
ordered_json observation_json(const Observation& o, Role role);

class SessionService {
public:
  explicit SessionService(ServiceOptions opts = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  /// Validates, persists and starts driving the AI-held roles.
  SessionHandle create(const SessionConfig& config);
  std::vector<SessionHandle> list() const;
  SessionHandle handle(const std::string& id) const;

  /// Returns the capability token for a human-held role. 409 when taken.
  std::string claim(const std::string& id, Role role);

  Observation observe(const std::string& id, Role role, const std::string& token) const;
  std::vector<std::uint8_t> image(const std::string& id, Role role, const std::string& token) const;
  TurnRecord post_turn(const std::string& id, Role role, const std::string& token, const std::string& text);

  std::string transcript_jsonl(const std::string& id) const;
  /// Frames with sequence >= from. Waits up to `wait` for one to appear.
  std::vector<EventFrame> events(const std::string& id, int from, std::chrono::milliseconds wait = {}) const;
  /// Blocks until the session is terminal or waiting on a human.
  void wait_idle(const std::string& id) const;

  /// Reloads persisted sessions by replay. Returns how many were recovered.
  std::size_t recover();
  void shutdown();

private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string& id) const;
  void start_driver(const std::shared_ptr<Entry>& e);
  void drive(Entry& e);
  void persist_meta(const Entry& e) const;
  void record_turn(Entry& e, const TurnRecord& rec);
  void emit(Entry& e, EventKind kind, ordered_json payload);
  void emit_end_if_terminal(Entry& e);

  ServiceOptions opts_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::vector<std::string> order_;
};

/// Registers the JSON API and the event stream on `server`.
void mount_routes(httplib::Server& server, SessionService& service);

} // namespace defuse
