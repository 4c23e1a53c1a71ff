#pragma once

#include <chrono>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>

#include "defuse/engine.hpp"
#include "defuse/render.hpp"

namespace defuse {

/// Everything an agent is allowed to see for one reply.
struct DialogueContext {
  Role role = Role::solver;
  std::string system_prompt;
  std::vector<ChatMessage> history;
  std::optional<SolverObservation> solver; // solver role only
  std::optional<ExpertObservation> expert; // expert role only
};

DialogueContext make_context(const Session& s, Role role, bool with_image);

/// Throws AgentError if a context carries the other role's material.
void check_role_isolation(const DialogueContext& ctx);

class Agent {
public:
  virtual ~Agent() = default;
  /// Reply text. The engine, not the agent, extracts actions.
  virtual std::string next_message(const DialogueContext& ctx) = 0;
  virtual bool wants_image() const { return false; }
};

/// Uniform draw from `available`. Throws AgentError when empty.
const std::string& random_action(const std::vector<std::string>& available, Rng& rng);

/// One uniformly chosen action per turn, never chats. The clock-only wait
/// token is left out of the draw.
class RandomAgent : public Agent {
public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}
  std::string next_message(const DialogueContext& ctx) override;

private:
  Rng rng_;
};

/// Sees only the solver view and image; follows the expert literally.
class OracleSolver : public Agent {
public:
  std::string next_message(const DialogueContext& ctx) override;
  bool wants_image() const override { return true; }

private:
  std::string pending_; // standing timer instruction from the expert
};

/// Answers from the manual plus the solver's descriptions.
class OracleExpert : public Agent {
public:
  std::string next_message(const DialogueContext& ctx) override;
};

/// Counts dog sprites in a rendered picture by connected components of fur pixels.
int count_dogs(const RenderedImage& img);

struct HttpRequest {
  std::string url;
  std::map<std::string, std::string> headers;
  std::string body;
  double timeout_seconds = 60.0;
};

struct HttpResponse {
  int status = 0; // 0 means the request never completed
  std::string body;
  std::string error;
};

using Transport = std::function<HttpResponse(const HttpRequest&)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// POSTs with cpp-httplib.
Transport http_transport();

/// Builds the chat-completions request body for a context.
nlohmann::ordered_json chat_request_body(const EndpointConfig& cfg, const DialogueContext& ctx);

/// OpenAI-compatible chat client. Retries 429, 5xx and transport failures
/// with exponential backoff; anything else, or exhausting retries, throws AgentError.
class RemoteAgent : public Agent {
public:
  RemoteAgent(EndpointConfig cfg, Transport transport = http_transport(), Sleeper sleeper = {});
  std::string next_message(const DialogueContext& ctx) override;
  bool wants_image() const override { return cfg_.supports_images; }

  int attempts() const { return attempts_; }

private:
  EndpointConfig cfg_;
  Transport transport_;
  Sleeper sleeper_;
  int attempts_ = 0;
};

/// Terminal bridge: prints the observation and reads a reply terminated by
/// a line containing only "." (or end of input).
class HumanAgent : public Agent {
public:
  HumanAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::string next_message(const DialogueContext& ctx) override;

private:
  std::istream& in_;
  std::ostream& out_;
};

/// Builds an agent for one session; random agents are seeded from the session seed.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, Role role, std::uint64_t session_seed);

/// Drives agents until the session ends. Agent failures end the episode.
void run_episode(Session& s, Agent& solver, Agent& expert);

} // namespace defuse
