#include <algorithm>

#include "defuse/error.hpp"
#include "defuse/service.hpp"
#include "httplib.h"

namespace defuse {

namespace {

void send_json(httplib::Response& res, const ordered_json& j, int status = 200) {
  res.status = status;
  res.set_content(j.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", message}}, status);
}

std::string bearer_token(const httplib::Request& req) {
  const auto auth = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (auth.rfind(prefix, 0) == 0) return auth.substr(prefix.size());
  return req.get_param_value("token");
}

Role role_param(const std::string& s) {
  const auto r = parse_role(s);
  if (!r) throw ServiceError(400, "unknown role: " + s);
  return *r;
}

ordered_json parse_body(const httplib::Request& req) {
  try {
    return ordered_json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ServiceError(400, std::string("invalid JSON: ") + e.what());
  }
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e.status(), e.what());
    } catch (const ConfigError& e) {
      send_error(res, 400, e.what());
    } catch (const ProtocolError& e) {
      send_error(res, 409, e.what());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, 400, e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

std::string sse_frame(const EventFrame& f) {
  return "id: " + std::to_string(f.sequence) + "\nevent: " + std::string(event_kind_name(f.kind)) +
         "\ndata: " + to_json(f).dump() + "\n\n";
}

} // namespace

void mount_routes(httplib::Server& server, SessionService& service) {
  const std::string sid = "/api/sessions/([0-9a-f]+)";

  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, {{"ok", true}});
  });

  server.Post("/api/sessions", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                const auto h = service.create(session_config_from_json(parse_body(req)));
                send_json(res, to_json(h), 201);
              }));

  server.Get("/api/sessions", guarded([&service](const httplib::Request&, httplib::Response& res) {
               auto out = ordered_json::array();
               for (const auto& h : service.list()) out.push_back(to_json(h));
               send_json(res, {{"sessions", out}});
             }));

  server.Get(sid, guarded([&service](const httplib::Request& req, httplib::Response& res) {
               const auto h = service.handle(req.matches[1]);
               auto j = to_json(h);
               j["config"] = to_json(h.config);
               send_json(res, j);
             }));

  server.Post(sid + "/roles/(solver|expert)/claim",
              guarded([&service](const httplib::Request& req, httplib::Response& res) {
                const Role role = role_param(req.matches[2]);
                const auto token = service.claim(req.matches[1], role);
                send_json(res, {{"role", role_name(role)}, {"token", token}}, 201);
              }));

  server.Get(sid + "/observation", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               const Role role = role_param(req.get_param_value("role"));
               const auto o = service.observe(req.matches[1], role, bearer_token(req));
               auto j = observation_json(o, role);
               if (role == Role::solver && !j.value("terminal", false))
                 j["image_url"] = "/api/sessions/" + std::string(req.matches[1]) + "/image";
               send_json(res, j);
             }));

  server.Get(sid + "/image", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               const std::string role_s = req.has_param("role") ? req.get_param_value("role") : "solver";
               const auto png = service.image(req.matches[1], role_param(role_s), bearer_token(req));
               res.set_content(std::string(png.begin(), png.end()), "image/png");
             }));

  server.Post(sid + "/turns", guarded([&service](const httplib::Request& req, httplib::Response& res) {
                const auto body = parse_body(req);
                const Role role = role_param(body.at("role").get<std::string>());
                const auto rec =
                    service.post_turn(req.matches[1], role, bearer_token(req), body.at("text").get<std::string>());
                send_json(res, to_json(rec), 201);
              }));

  server.Get(sid + "/transcript", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               res.set_content(service.transcript_jsonl(req.matches[1]), "application/x-ndjson");
             }));

  server.Get(sid + "/events", guarded([&service](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               int from = 0;
               if (req.has_param("from"))
                 from = std::stoi(req.get_param_value("from"));
               else if (req.has_header("Last-Event-ID"))
                 from = std::stoi(req.get_header_value("Last-Event-ID")) + 1;
               service.handle(id); // 404 before the stream starts
               auto next = std::make_shared<int>(std::max(from, 0));
               res.set_header("Cache-Control", "no-cache");
               res.set_chunked_content_provider(
                   "text/event-stream", [&service, id, next](std::size_t, httplib::DataSink& sink) {
                     std::vector<EventFrame> frames;
                     try {
                       frames = service.events(id, *next, std::chrono::milliseconds(1000));
                     } catch (const std::exception&) {
                       sink.done();
                       return true;
                     }
                     if (frames.empty()) {
                       const std::string ping = ": keepalive\n\n";
                       return sink.write(ping.data(), ping.size());
                     }
                     for (const auto& f : frames) {
                       const auto text = sse_frame(f);
                       if (!sink.write(text.data(), text.size())) return false;
                       *next = f.sequence + 1;
                       if (f.kind == EventKind::session_ended) {
                         sink.done();
                         return true;
                       }
                     }
                     return true;
                   });
             }));
}

} // namespace defuse
