#include "defuse/agent_spec.hpp"

#include <fstream>

#include "defuse/error.hpp"

namespace defuse {

std::string_view agent_kind_name(AgentKind k) {
  switch (k) {
  case AgentKind::random: return "random";
  case AgentKind::oracle: return "oracle";
  case AgentKind::remote_model: return "remote_model";
  case AgentKind::human: return "human";
  }
  return "?";
}

std::optional<AgentKind> parse_agent_kind(std::string_view s) {
  for (auto k : {AgentKind::random, AgentKind::oracle, AgentKind::remote_model, AgentKind::human})
    if (agent_kind_name(k) == s) return k;
  return std::nullopt;
}

std::string AgentSpec::label() const {
  if (kind == AgentKind::remote_model && endpoint) return "remote:" + endpoint->model;
  return std::string(agent_kind_name(kind));
}

void to_json(nlohmann::ordered_json& j, const EndpointConfig& e) {
  j = {{"base_url", e.base_url},         {"model", e.model},     {"auth_env", e.auth_env},
       {"timeout", e.timeout_seconds},   {"retries", e.retries}, {"supports_images", e.supports_images},
       {"temperature", e.temperature},   {"max_tokens", e.max_tokens}};
}

void from_json(const nlohmann::ordered_json& j, EndpointConfig& e) {
  if (!j.is_object() || !j.contains("base_url") || !j.contains("model"))
    throw ConfigError("endpoint config needs base_url and model");
  e.base_url = j.at("base_url").get<std::string>();
  e.model = j.at("model").get<std::string>();
  e.auth_env = j.value("auth_env", std::string());
  e.timeout_seconds = j.value("timeout", 60.0);
  e.retries = j.value("retries", 3);
  e.supports_images = j.value("supports_images", true);
  e.temperature = j.value("temperature", 0.0);
  e.max_tokens = j.value("max_tokens", 512);
  if (e.timeout_seconds <= 0 || e.retries < 0) throw ConfigError("endpoint timeout/retries out of range");
}

void to_json(nlohmann::ordered_json& j, const AgentSpec& a) {
  j = {{"kind", agent_kind_name(a.kind)}};
  if (a.kind == AgentKind::random) j["seed"] = a.seed;
  if (a.endpoint) j["endpoint"] = *a.endpoint;
}

void from_json(const nlohmann::ordered_json& j, AgentSpec& a) {
  const auto kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
  const auto parsed = parse_agent_kind(kind);
  if (!parsed) throw ConfigError("unknown agent kind: " + kind);
  a.kind = *parsed;
  if (j.is_object()) {
    a.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("endpoint")) a.endpoint = j.at("endpoint").get<EndpointConfig>();
  }
  if (a.kind == AgentKind::remote_model && !a.endpoint) throw ConfigError("remote_model agent needs an endpoint");
}

EndpointConfig load_endpoint_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read endpoint config " + path);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return j.get<EndpointConfig>();
}

} // namespace defuse
