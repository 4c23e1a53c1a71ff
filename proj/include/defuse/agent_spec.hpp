#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace defuse {

enum class AgentKind : std::uint8_t { random, oracle, remote_model, human };

std::string_view agent_kind_name(AgentKind k);
std::optional<AgentKind> parse_agent_kind(std::string_view s);

/// OpenAI-compatible chat endpoint. The key itself is only read from the
/// environment variable named by auth_env.
struct EndpointConfig {
  std::string base_url;
  std::string model;
  std::string auth_env;
  double timeout_seconds = 60.0;
  int retries = 3;
  bool supports_images = true;
  double temperature = 0.0;
  int max_tokens = 512;
};

struct AgentSpec {
  AgentKind kind = AgentKind::random;
  std::optional<EndpointConfig> endpoint; // remote_model only
  std::uint64_t seed = 0;                 // random only

  std::string label() const; // "random", "oracle", "remote:<model>", "human"
};

void to_json(nlohmann::ordered_json& j, const EndpointConfig& e);
void from_json(const nlohmann::ordered_json& j, EndpointConfig& e);
void to_json(nlohmann::ordered_json& j, const AgentSpec& a);
void from_json(const nlohmann::ordered_json& j, AgentSpec& a);

/// Loads an endpoint file; throws ConfigError on missing fields.
EndpointConfig load_endpoint_config(const std::string& path);

} // namespace defuse
