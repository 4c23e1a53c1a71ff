#include "defuse/service.hpp"

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "defuse/error.hpp"
#include "defuse/metrics.hpp"

namespace defuse {

namespace fs = std::filesystem;

std::string_view event_kind_name(EventKind k) {
  switch (k) {
  case EventKind::turn_added: return "turn_added";
  case EventKind::state_changed: return "state_changed";
  case EventKind::session_ended: return "session_ended";
  }
  return "?";
}

ordered_json to_json(const EventFrame& f) {
  return {{"sequence", f.sequence}, {"kind", event_kind_name(f.kind)}, {"payload", f.payload}};
}

EventFrame event_frame_from_json(const ordered_json& j) {
  EventFrame f;
  f.sequence = j.at("sequence").get<int>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "turn_added")
    f.kind = EventKind::turn_added;
  else if (kind == "state_changed")
    f.kind = EventKind::state_changed;
  else if (kind == "session_ended")
    f.kind = EventKind::session_ended;
  else
    throw ProtocolError("unknown event kind: " + kind);
  f.payload = j.at("payload");
  return f;
}

ordered_json to_json(const SessionHandle& h) {
  return {{"session_id", h.session_id},
          {"created_at", h.created_at},
          {"puzzle", puzzle_name(h.config.puzzle)},
          {"seed", h.config.seed},
          {"solver", h.config.solver.label()},
          {"expert", h.config.expert.label()},
          {"status", status_name(h.status)},
          {"roles",
           {{"solver", {{"human", h.solver_human}, {"claimed", h.solver_claimed}}},
            {"expert", {{"human", h.expert_human}, {"claimed", h.expert_claimed}}}}}};
}

namespace {

ordered_json history_json(const std::vector<ChatMessage>& history) {
  auto out = ordered_json::array();
  for (const auto& m : history) out.push_back({{"turn_index", m.turn_index}, {"role", role_name(m.role)}, {"text", m.text}});
  return out;
}

} // namespace

ordered_json observation_json(const Observation& o, Role role) {
  if (const auto* t = std::get_if<TerminalObservation>(&o)) {
    ordered_json j = {{"role", role_name(role)},
                      {"terminal", true},
                      {"status", status_name(t->status)},
                      {"turns", t->turns},
                      {"mistakes", t->mistakes},
                      {"progress", t->progress}};
    if (!t->fail_reason.empty()) j["fail_reason"] = t->fail_reason;
    return j;
  }
  if (const auto* s = std::get_if<SolverObservation>(&o)) {
    auto outcomes = ordered_json::array();
    for (const auto& x : s->last_outcomes) outcomes.push_back(to_json(x));
    return {{"role", "solver"},
            {"terminal", false},
            {"puzzle", puzzle_name(s->puzzle)},
            {"turn_index", s->turn_index},
            {"clock_remaining", s->clock_remaining},
            {"clock_display", s->clock_display},
            {"actions", s->actions},
            {"view", s->view},
            {"strikes", s->strikes},
            {"last_outcomes", outcomes},
            {"history", history_json(s->history)}};
  }
  const auto& e = std::get<ExpertObservation>(o);
  return {{"role", "expert"},
          {"terminal", false},
          {"puzzle", puzzle_name(e.puzzle)},
          {"turn_index", e.turn_index},
          {"manual", e.manual},
          {"history", history_json(e.history)}};
}

struct SessionService::Entry {
  std::string id;
  std::string created_at;
  mutable std::mutex mu;
  mutable std::condition_variable cv;
  Session session;
  bool human[2] = {false, false};
  std::string token[2];
  std::unique_ptr<Agent> agent[2];
  std::vector<EventFrame> frames;
  bool busy = false; // an agent reply is being computed outside the lock
  bool stop = false;
  std::thread driver;
  fs::path dir;
};

namespace {

std::size_t idx(Role r) { return r == Role::solver ? 0 : 1; }

std::string random_token() {
  static std::mutex mu;
  static std::mt19937_64 gen{std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32)};
  std::lock_guard lock(mu);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(gen()),
                static_cast<unsigned long long>(gen()));
  return buf;
}

std::string now_iso() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SessionHandle make_handle(const std::string& id, const std::string& created, const Session& s, const bool human[2],
                          const std::string token[2]) {
  SessionHandle h;
  h.session_id = id;
  h.created_at = created;
  h.config = s.config;
  h.solver_human = human[0];
  h.expert_human = human[1];
  h.solver_claimed = !token[0].empty();
  h.expert_claimed = !token[1].empty();
  h.status = s.status;
  return h;
}

void append_line(const fs::path& p, const std::string& line) {
  std::ofstream out(p, std::ios::app | std::ios::binary);
  out << line << "\n";
}

std::vector<ordered_json> read_lines(const fs::path& p) {
  std::vector<ordered_json> out;
  std::ifstream in(p, std::ios::binary);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(ordered_json::parse(line));
  return out;
}

} // namespace

SessionService::SessionService(ServiceOptions opts) : opts_(std::move(opts)) {
  if (!opts_.data_dir.empty()) fs::create_directories(fs::path(opts_.data_dir) / "sessions");
}

SessionService::~SessionService() { shutdown(); }

void SessionService::shutdown() {
  std::vector<std::shared_ptr<Entry>> all;
  {
    std::lock_guard lock(mu_);
    for (auto& [id, e] : sessions_) all.push_back(e);
  }
  for (auto& e : all) {
    {
      std::lock_guard lock(e->mu);
      e->stop = true;
    }
    e->cv.notify_all();
    if (e->driver.joinable()) e->driver.join();
  }
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session");
  return it->second;
}

SessionHandle SessionService::create(const SessionConfig& config) {
  try {
    validate_config(config);
  } catch (const ConfigError& e) {
    throw ServiceError(400, e.what());
  }
  {
    std::lock_guard lock(mu_);
    std::size_t active = 0;
    for (const auto& [id, e] : sessions_) {
      std::lock_guard el(e->mu);
      if (!e->session.terminal()) ++active;
    }
    if (active >= opts_.max_active) throw ServiceError(503, "session capacity reached");
  }
  auto e = std::make_shared<Entry>();
  e->id = random_token();
  e->created_at = now_iso();
  try {
    e->session = create_session(config);
  } catch (const Error& err) {
    throw ServiceError(400, err.what());
  }
  for (Role r : {Role::solver, Role::expert}) {
    const auto& spec = r == Role::solver ? config.solver : config.expert;
    e->human[idx(r)] = spec.kind == AgentKind::human;
    if (!e->human[idx(r)]) e->agent[idx(r)] = make_agent(spec, r, config.seed);
  }
  if (!opts_.data_dir.empty()) {
    e->dir = fs::path(opts_.data_dir) / "sessions" / e->id;
    fs::create_directories(e->dir);
    std::ofstream(e->dir / "config.json") << to_json(config).dump(2) << "\n";
    std::ofstream(e->dir / "transcript.jsonl", std::ios::trunc);
    std::ofstream(e->dir / "events.jsonl", std::ios::trunc);
    persist_meta(*e);
  }
  SessionHandle h = make_handle(e->id, e->created_at, e->session, e->human, e->token);
  {
    std::lock_guard lock(mu_);
    sessions_[e->id] = e;
    order_.push_back(e->id);
  }
  start_driver(e);
  return h;
}

std::vector<SessionHandle> SessionService::list() const {
  std::lock_guard lock(mu_);
  std::vector<SessionHandle> out;
  for (const auto& id : order_) {
    const auto& e = sessions_.at(id);
    std::lock_guard el(e->mu);
    out.push_back(make_handle(e->id, e->created_at, e->session, e->human, e->token));
  }
  return out;
}

SessionHandle SessionService::handle(const std::string& id) const {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  return make_handle(e->id, e->created_at, e->session, e->human, e->token);
}

std::string SessionService::claim(const std::string& id, Role role) {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  if (!e->human[idx(role)]) throw ServiceError(400, std::string(role_name(role)) + " is not a human role");
  if (!e->token[idx(role)].empty()) throw ServiceError(409, std::string(role_name(role)) + " is already claimed");
  e->token[idx(role)] = random_token();
  persist_meta(*e);
  emit(*e, EventKind::state_changed,
       {{"claimed", role_name(role)}, {"status", status_name(e->session.status)},
        {"next_role", role_name(e->session.next_role())}});
  e->cv.notify_all();
  return e->token[idx(role)];
}

namespace {

void check_token(const std::string& held, const std::string& given, Role role) {
  if (held.empty()) throw ServiceError(403, std::string(role_name(role)) + " is not held by a client");
  if (held != given) throw ServiceError(403, "bad role token");
}

} // namespace

Observation SessionService::observe(const std::string& id, Role role, const std::string& token) const {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  check_token(e->token[idx(role)], token, role);
  return defuse::observe(e->session, role, false);
}

std::vector<std::uint8_t> SessionService::image(const std::string& id, Role role, const std::string& token) const {
  if (role != Role::solver) throw ServiceError(403, "only the solver may view the puzzle");
  auto e = find(id);
  std::lock_guard lock(e->mu);
  check_token(e->token[idx(role)], token, role);
  return encode_png(render_image(e->session.state, e->session.clock_remaining));
}

TurnRecord SessionService::post_turn(const std::string& id, Role role, const std::string& token,
                                     const std::string& text) {
  auto e = find(id);
  std::unique_lock lock(e->mu);
  check_token(e->token[idx(role)], token, role);
  if (e->session.terminal()) throw ServiceError(409, "session has ended");
  if (e->session.next_role() != role) throw ServiceError(409, "not your turn");
  TurnRecord rec = advance_turn(e->session, role, text);
  record_turn(*e, rec);
  lock.unlock();
  e->cv.notify_all();
  return rec;
}

std::string SessionService::transcript_jsonl(const std::string& id) const {
  auto e = find(id);
  std::lock_guard lock(e->mu);
  std::ostringstream out;
  write_transcript(out, e->session);
  return out.str();
}

std::vector<EventFrame> SessionService::events(const std::string& id, int from,
                                               std::chrono::milliseconds wait) const {
  auto e = find(id);
  std::unique_lock lock(e->mu);
  const auto have = [&] { return static_cast<int>(e->frames.size()) > from || e->stop; };
  if (wait.count() > 0) e->cv.wait_for(lock, wait, have);
  if (e->stop && static_cast<int>(e->frames.size()) <= from) throw ServiceError(503, "service stopping");
  std::vector<EventFrame> out;
  for (std::size_t i = static_cast<std::size_t>(std::max(from, 0)); i < e->frames.size(); ++i)
    out.push_back(e->frames[i]);
  return out;
}

void SessionService::wait_idle(const std::string& id) const {
  auto e = find(id);
  std::unique_lock lock(e->mu);
  e->cv.wait(lock, [&] {
    return e->stop || e->session.terminal() || (!e->busy && e->human[idx(e->session.next_role())]);
  });
}

void SessionService::persist_meta(const Entry& e) const {
  if (e.dir.empty()) return;
  ordered_json meta = {{"session_id", e.id},
                       {"created_at", e.created_at},
                       {"status", status_name(e.session.status)},
                       {"fail_reason", e.session.fail_reason},
                       {"tokens", {{"solver", e.token[0]}, {"expert", e.token[1]}}}};
  const auto tmp = e.dir / "meta.json.tmp";
  std::ofstream(tmp) << meta.dump(2) << "\n";
  fs::rename(tmp, e.dir / "meta.json");
}

void SessionService::emit(Entry& e, EventKind kind, ordered_json payload) {
  EventFrame f{static_cast<int>(e.frames.size()), kind, std::move(payload)};
  if (!e.dir.empty()) append_line(e.dir / "events.jsonl", to_json(f).dump());
  e.frames.push_back(std::move(f));
}

void SessionService::emit_end_if_terminal(Entry& e) {
  if (!e.session.terminal()) return;
  const auto r = score_run(e.session);
  ordered_json payload = {{"status", status_name(e.session.status)},
                          {"success", r.success},
                          {"psr", r.psr},
                          {"mistakes", r.mistakes},
                          {"conversation_length", r.conversation_length}};
  if (!e.session.fail_reason.empty()) payload["fail_reason"] = e.session.fail_reason;
  emit(e, EventKind::session_ended, std::move(payload));
  persist_meta(e);
}

void SessionService::record_turn(Entry& e, const TurnRecord& rec) {
  const auto line = to_json(rec).dump();
  if (!e.dir.empty()) append_line(e.dir / "transcript.jsonl", line);
  emit(e, EventKind::turn_added, to_json(rec));
  emit_end_if_terminal(e);
}

void SessionService::start_driver(const std::shared_ptr<Entry>& e) {
  if (e->human[0] && e->human[1]) return;
  e->driver = std::thread([this, raw = e.get()] { drive(*raw); });
}

void SessionService::drive(Entry& e) {
  std::unique_lock lock(e.mu);
  for (;;) {
    e.cv.wait(lock, [&] { return e.stop || e.session.terminal() || !e.human[idx(e.session.next_role())]; });
    if (e.stop || e.session.terminal()) break;
    const Role role = e.session.next_role();
    Agent& agent = *e.agent[idx(role)];
    const DialogueContext ctx = make_context(e.session, role, agent.wants_image());
    e.busy = true;
    lock.unlock();
    std::string text;
    std::string failure;
    try {
      text = agent.next_message(ctx);
    } catch (const std::exception& ex) {
      failure = std::string(role_name(role)) + " agent failed: " + ex.what();
    }
    lock.lock();
    e.busy = false;
    if (e.stop) break;
    if (!failure.empty()) {
      fail_session(e.session, failure);
      emit_end_if_terminal(e);
    } else {
      record_turn(e, advance_turn(e.session, role, text));
    }
    e.cv.notify_all();
  }
  e.cv.notify_all();
}

std::size_t SessionService::recover() {
  if (opts_.data_dir.empty()) return 0;
  const fs::path root = fs::path(opts_.data_dir) / "sessions";
  if (!fs::exists(root)) return 0;
  std::vector<fs::path> dirs;
  for (const auto& d : fs::directory_iterator(root))
    if (d.is_directory() && fs::exists(d.path() / "meta.json")) dirs.push_back(d.path());
  std::vector<std::pair<std::string, std::shared_ptr<Entry>>> loaded;
  for (const auto& dir : dirs) {
    const auto id = dir.filename().string();
    {
      std::lock_guard lock(mu_);
      if (sessions_.count(id)) continue;
    }
    ordered_json meta;
    SessionConfig config;
    {
      std::ifstream m(dir / "meta.json");
      meta = ordered_json::parse(m);
      std::ifstream c(dir / "config.json");
      config = session_config_from_json(ordered_json::parse(c));
    }
    std::ifstream t(dir / "transcript.jsonl", std::ios::binary);
    auto records = read_transcript(t);
    auto e = std::make_shared<Entry>();
    e->id = id;
    e->created_at = meta.value("created_at", std::string());
    e->dir = dir;
    e->session = replay_session(config, records, meta.value("fail_reason", std::string()));
    e->token[0] = meta["tokens"].value("solver", std::string());
    e->token[1] = meta["tokens"].value("expert", std::string());
    for (const auto& f : read_lines(dir / "events.jsonl")) e->frames.push_back(event_frame_from_json(f));
    for (Role r : {Role::solver, Role::expert}) {
      const auto& spec = r == Role::solver ? config.solver : config.expert;
      e->human[idx(r)] = spec.kind == AgentKind::human;
      if (!e->human[idx(r)]) e->agent[idx(r)] = make_agent(spec, r, config.seed);
    }
    loaded.emplace_back(e->created_at + id, e);
  }
  std::sort(loaded.begin(), loaded.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, e] : loaded) {
    {
      std::lock_guard lock(mu_);
      sessions_[e->id] = e;
      order_.push_back(e->id);
    }
    if (!e->session.terminal()) start_driver(e);
  }
  return loaded.size();
}

} // namespace defuse
