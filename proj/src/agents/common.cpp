#include <iostream>

#include "defuse/agents.hpp"
#include "defuse/error.hpp"

namespace defuse {

DialogueContext make_context(const Session& s, Role role, bool with_image) {
  DialogueContext ctx;
  ctx.role = role;
  ctx.system_prompt = prompt_text(role);
  Observation obs = observe(s, role, with_image);
  if (auto* so = std::get_if<SolverObservation>(&obs)) {
    ctx.history = so->history;
    ctx.solver = std::move(*so);
  } else if (auto* eo = std::get_if<ExpertObservation>(&obs)) {
    ctx.history = eo->history;
    ctx.expert = std::move(*eo);
  } else {
    throw ProtocolError("no context for a finished session");
  }
  check_role_isolation(ctx);
  return ctx;
}

void check_role_isolation(const DialogueContext& ctx) {
  if (ctx.role == Role::expert) {
    if (ctx.solver || !ctx.expert) throw AgentError("expert context carries a solver observation");
  } else {
    if (ctx.expert || !ctx.solver) throw AgentError("solver context carries the manual");
  }
}

const std::string& random_action(const std::vector<std::string>& available, Rng& rng) {
  if (available.empty()) throw AgentError("no available actions to draw from");
  return available[rng.below(available.size())];
}

std::string RandomAgent::next_message(const DialogueContext& ctx) {
  if (ctx.role == Role::expert) return "I cannot help with that.";
  std::vector<std::string> pool;
  for (const auto& a : ctx.solver->actions)
    if (a != kWaitToken) pool.push_back(a);
  if (pool.empty()) pool = ctx.solver->actions;
  return random_action(pool, rng_);
}

std::string HumanAgent::next_message(const DialogueContext& ctx) {
  out_ << "\n=== " << role_name(ctx.role) << " turn ===\n";
  for (const auto& m : ctx.history) out_ << "[" << m.turn_index << "] " << role_name(m.role) << ": " << m.text << "\n";
  if (ctx.solver) {
    out_ << describe_view(ctx.solver->view);
    out_ << "Actions:";
    for (const auto& a : ctx.solver->actions) out_ << ' ' << a;
    out_ << "\n";
  } else {
    out_ << ctx.expert->manual;
  }
  out_ << "Reply (end with a line containing only '.'):\n" << std::flush;
  std::string text, line;
  bool first = true;
  while (std::getline(in_, line) && line != ".") {
    if (!first) text += '\n';
    text += line;
    first = false;
  }
  if (first && !in_) throw AgentError("input closed");
  return text;
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, Role role, std::uint64_t session_seed) {
  switch (spec.kind) {
  case AgentKind::random: return std::make_unique<RandomAgent>(derive_seed(session_seed, {spec.seed}));
  case AgentKind::oracle:
    if (role == Role::solver) return std::make_unique<OracleSolver>();
    return std::make_unique<OracleExpert>();
  case AgentKind::remote_model:
    if (!spec.endpoint) throw ConfigError("remote_model agent needs an endpoint");
    return std::make_unique<RemoteAgent>(*spec.endpoint);
  case AgentKind::human: return std::make_unique<HumanAgent>(std::cin, std::cout);
  }
  throw ConfigError("unknown agent kind");
}

void run_episode(Session& s, Agent& solver, Agent& expert) {
  while (!s.terminal()) {
    const Role role = s.next_role();
    Agent& agent = role == Role::solver ? solver : expert;
    std::string text;
    try {
      text = agent.next_message(make_context(s, role, agent.wants_image()));
    } catch (const std::exception& e) {
      fail_session(s, std::string(role_name(role)) + " agent failed: " + e.what());
      return;
    }
    advance_turn(s, role, text);
  }
}

} // namespace defuse
