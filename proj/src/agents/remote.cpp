#include <cstdlib>
#include <thread>

#include "defuse/agents.hpp"
#include "defuse/error.hpp"
#include "httplib.h"

namespace defuse {

namespace {

struct UrlParts {
  std::string origin; // scheme://host[:port]
  std::string path;
};

UrlParts split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable(const HttpResponse& r) { return r.status == 0 || r.status == 429 || r.status >= 500; }

std::string extract_content(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    std::string out;
    for (const auto& part : content)
      if (part.value("type", "") == "text") out += part.at("text").get<std::string>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw AgentError(std::string("malformed chat response: ") + e.what());
  }
}

} // namespace

Transport http_transport() {
  return [](const HttpRequest& req) {
    HttpResponse out;
    UrlParts url;
    try {
      url = split_url(req.url);
    } catch (const std::exception& e) {
      out.error = e.what();
      return out;
    }
    httplib::Client cli(url.origin);
    const auto secs = static_cast<time_t>(req.timeout_seconds);
    const auto usecs = static_cast<time_t>((req.timeout_seconds - static_cast<double>(secs)) * 1e6);
    cli.set_connection_timeout(secs, usecs);
    cli.set_read_timeout(secs, usecs);
    cli.set_write_timeout(secs, usecs);
    httplib::Headers headers;
    for (const auto& [k, v] : req.headers) headers.emplace(k, v);
    auto res = cli.Post(url.path, headers, req.body, "application/json");
    if (!res) {
      out.error = httplib::to_string(res.error());
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
  };
}

nlohmann::ordered_json chat_request_body(const EndpointConfig& cfg, const DialogueContext& ctx) {
  using oj = nlohmann::ordered_json;
  std::string system = ctx.system_prompt;
  if (ctx.expert) system += "\n\nManual:\n" + ctx.expert->manual;
  oj messages = oj::array();
  messages.push_back({{"role", "system"}, {"content", system}});
  for (const auto& m : ctx.history)
    messages.push_back({{"role", m.role == ctx.role ? "assistant" : "user"}, {"content", m.text}});
  if (ctx.solver) {
    const auto& o = *ctx.solver;
    std::string text = "Time left: " + o.clock_display + "\nPossible actions:\n";
    for (const auto& a : o.actions) text += a + "\n";
    if (!o.last_outcomes.empty()) {
      text += "Result of your last actions:\n";
      for (const auto& r : o.last_outcomes) text += std::string(outcome_name(r.kind)) + ": " + r.detail + "\n";
    }
    if (cfg.supports_images && !o.png.empty()) {
      const std::string png(o.png.begin(), o.png.end());
      messages.push_back(
          {{"role", "user"},
           {"content",
            oj::array({{{"type", "text"}, {"text", text}},
                       {{"type", "image_url"},
                        {"image_url", {{"url", "data:image/png;base64," + httplib::detail::base64_encode(png)}}}}})}});
    } else {
      text += "The puzzle image is described below.\n" + describe_view(o.view);
      messages.push_back({{"role", "user"}, {"content", text}});
    }
  }
  return {{"model", cfg.model},
          {"messages", messages},
          {"temperature", cfg.temperature},
          {"max_tokens", cfg.max_tokens}};
}

RemoteAgent::RemoteAgent(EndpointConfig cfg, Transport transport, Sleeper sleeper)
    : cfg_(std::move(cfg)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string RemoteAgent::next_message(const DialogueContext& ctx) {
  check_role_isolation(ctx);
  HttpRequest req;
  req.url = cfg_.base_url;
  while (!req.url.empty() && req.url.back() == '/') req.url.pop_back();
  req.url += "/chat/completions";
  req.timeout_seconds = cfg_.timeout_seconds;
  if (!cfg_.auth_env.empty()) {
    if (const char* key = std::getenv(cfg_.auth_env.c_str())) req.headers["Authorization"] = std::string("Bearer ") + key;
  }
  req.body = chat_request_body(cfg_, ctx).dump();

  std::string last_error;
  int tries = 0;
  for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
    if (attempt > 0) sleeper_(std::chrono::milliseconds(std::min(30000, 500 << std::min(attempt - 1, 6))));
    ++attempts_;
    ++tries;
    const HttpResponse res = transport_(req);
    if (res.status >= 200 && res.status < 300) return extract_content(res.body);
    last_error = res.status == 0 ? "transport error: " + res.error : "HTTP " + std::to_string(res.status);
    if (!retryable(res)) break;
  }
  throw AgentError("chat request failed after " + std::to_string(tries) + " attempt(s): " + last_error);
}

} // namespace defuse
