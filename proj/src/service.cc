#include "teamsim/service.h"

#include <httplib.h>

#include <cstdio>

#include "teamsim/io.h"
#include "teamsim/json_codec.h"

namespace teamsim {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(const Error& e) {
  json j{{"error", error_kind_name(e.kind())}, {"message", e.what()}};
  if (e.line() > 0) {
    j["line"] = e.line();
    j["column"] = e.column();
  }
  return j;
}

int status_for(const Error& e) {
  // Errors located in a submitted text are malformed payloads.
  if (e.line() > 0 && e.kind() != ErrorKind::kPatternDisconnected) return 400;
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kInvalidInterval:
    case ErrorKind::kIo:
      return 400;
    default:
      return 422;
  }
}

json pattern_json(const Session& s) {
  const PatternGraph& p = s.pattern();
  json nodes = json::array();
  for (PNodeId u : p.nodes()) {
    const Interval& c = p.capacity(u);
    json cap = json::array({c.lower});
    cap.push_back(c.unbounded() ? json(nullptr) : json(c.upper));
    nodes.push_back(json{{"id", p.name(u)},
                         {"label", s.labels().name(p.label(u))},
                         {"cap", cap},
                         {"fragment", s.fragmentation().owner(u) + 1}});
  }
  json edges = json::array(), cut = json::array();
  for (auto [a, b] : p.edges()) edges.push_back(json::array({p.name(a), p.name(b)}));
  for (auto [a, b] : s.fragmentation().cut_edges(p)) cut.push_back(json::array({p.name(a), p.name(b)}));
  return json{{"text", serialize_pattern(p, s.labels())},
              {"nodes", nodes},
              {"edges", edges},
              {"h", s.fragmentation().h()},
              {"cut", cut},
              {"satisfiable", s.current().satisfiable}};
}

json result_json(const Session& s, const QueryResult& r) {
  return json{{"satisfiable", r.satisfiable},
              {"teams", topk_json(r.topk, s.graph(), &s.pattern())},
              {"affected", r.affected.size()},
              {"stats", stats_json(r.stats)}};
}

std::size_t get_size(const json& body, const char* key, std::size_t dflt) {
  if (!body.contains(key)) return dflt;
  if (!body[key].is_number_unsigned()) throw Error(ErrorKind::kParse, std::string("'") + key + "' must be a non-negative integer");
  return body[key].get<std::size_t>();
}

bool get_bool(const json& body, const char* key, bool dflt) {
  if (!body.contains(key)) return dflt;
  if (!body[key].is_boolean()) throw Error(ErrorKind::kParse, std::string("'") + key + "' must be a boolean");
  return body[key].get<bool>();
}

std::string get_text(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string())
    throw Error(ErrorKind::kParse, std::string("missing string field '") + key + "'");
  return body[key].get<std::string>();
}

UpdateSet update_set_from(const json& body) {
  if (body.contains("script")) {
    auto sets = parse_updates(get_text(body, "script"));
    if (sets.size() > 1) throw Error(ErrorKind::kParse, "script must contain exactly one update set");
    return sets.empty() ? UpdateSet{} : sets.front();
  }
  UpdateSet set;
  if (!body.contains("units") || !body["units"].is_array())
    throw Error(ErrorKind::kParse, "expected 'script' or 'units'");
  int line = 0;
  for (const auto& u : body["units"]) {
    ++line;
    if (!u.is_string()) throw Error(ErrorKind::kParse, "units must be strings", line, 1);
    parse_update_into(u.get<std::string>(), line, set);
  }
  return set;
}

}  // namespace

std::shared_ptr<Service::Entry> Service::find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void Service::mount(httplib::Server& server) {
  server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return reply(res, 400, json{{"error", "ParseError"}, {"message", "invalid JSON"}});
    try {
      LabelTable labels;
      DataGraph g = parse_graph(get_text(body, "graph"), labels);
      PatternGraph p = parse_pattern(get_text(body, "pattern"), labels);
      SessionConfig cfg;
      cfg.r = static_cast<Hop>(get_size(body, "r", 2));
      cfg.k = get_size(body, "k", 10);
      cfg.h = get_size(body, "h", 3);
      cfg.early_return = get_bool(body, "earlyReturn", true);
      cfg.filter = get_bool(body, "filter", true);
      if (cfg.r < 1 || cfg.k < 1 || cfg.h < 1) throw Error(ErrorKind::kParse, "r, k and h must be positive");
      auto entry = std::make_shared<Entry>();
      entry->session = std::make_unique<Session>(std::move(labels), std::move(g), std::move(p), cfg);
      {
        std::lock_guard<std::mutex> lock(mu_);
        entry->id = "s" + std::to_string(next_id_++);
        sessions_[entry->id] = entry;
      }
      const Session& s = *entry->session;
      json out = result_json(s, s.current());
      out.erase("stats");
      out.erase("affected");
      out["id"] = entry->id;
      out["r"] = cfg.r;
      out["k"] = cfg.k;
      out["h"] = s.fragmentation().h();
      reply(res, s.current().satisfiable ? 201 : 200, out);
    } catch (const Error& e) {
      reply(res, status_for(e), error_body(e));
    }
  });

  server.Post(R"(/sessions/([^/]+)/updates)", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    if (!entry) return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    if (entry->busy.exchange(true))
      return reply(res, 409, json{{"error", "Conflict"}, {"message", "an update set is already in flight"}});
    struct Release {
      std::atomic<bool>& b;
      ~Release() { b.store(false); }
    } release{entry->busy};
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return reply(res, 400, json{{"error", "ParseError"}, {"message", "invalid JSON"}});
    UpdateSet set;
    try {
      set = update_set_from(body);
    } catch (const Error& e) {
      return reply(res, 400, error_body(e));
    }
    std::unique_lock<std::shared_mutex> lock(entry->mu);
    try {
      QueryResult r = entry->session->apply(set);
      reply(res, 200, result_json(*entry->session, r));
    } catch (const Error& e) {
      reply(res, 422, error_body(e));
    }
  });

  server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    if (!entry) return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    std::shared_lock<std::shared_mutex> lock(entry->mu);
    const Session& s = *entry->session;
    reply(res, 200,
          json{{"id", entry->id},
               {"r", s.config().r},
               {"k", s.config().k},
               {"h", s.fragmentation().h()},
               {"satisfiable", s.current().satisfiable},
               {"graph", {{"nodes", s.graph().num_nodes()}, {"edges", s.graph().num_edges()}}},
               {"pattern", {{"nodes", s.pattern().num_nodes()}, {"edges", s.pattern().num_edges()}}},
               {"teamCount", s.current().topk.size()},
               {"counters", counters_json(s.counters())}});
  });

  server.Get(R"(/sessions/([^/]+)/teams)", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    if (!entry) return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    std::shared_lock<std::shared_mutex> lock(entry->mu);
    const Session& s = *entry->session;
    reply(res, 200, json{{"satisfiable", s.current().satisfiable},
                         {"teams", topk_json(s.current().topk, s.graph(), &s.pattern())}});
  });

  server.Get(R"(/sessions/([^/]+)/pattern)", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    if (!entry) return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    std::shared_lock<std::shared_mutex> lock(entry->mu);
    reply(res, 200, pattern_json(*entry->session));
  });

  server.Get(R"(/sessions/([^/]+)/stats)", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = find(req.matches[1]);
    if (!entry) return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    std::shared_lock<std::shared_mutex> lock(entry->mu);
    const Session& s = *entry->session;
    reply(res, 200, json{{"counters", counters_json(s.counters())}, {"last", stats_json(s.current().stats)}});
  });

  server.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(mu_);
    if (sessions_.erase(req.matches[1]) == 0)
      return reply(res, 404, json{{"error", "NotFound"}, {"message", "no such session"}});
    res.status = 204;
  });
}

std::pair<std::string, int> parse_bind_address(const std::string& addr) {
  if (addr.empty()) return {"127.0.0.1", 8080};
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) return {addr, 8080};
  std::string host = addr.substr(0, colon);
  int port = 8080;
  try {
    port = std::stoi(addr.substr(colon + 1));
  } catch (...) {
    throw Error(ErrorKind::kParse, "bad port in '" + addr + "'");
  }
  return {host.empty() ? std::string("127.0.0.1") : host, port};
}

int serve(const std::string& addr) {
  auto [host, port] = parse_bind_address(addr);
  httplib::Server server;
  Service service;
  service.mount(server);
  std::fprintf(stderr, "teamsim: listening on %s:%d\n", host.c_str(), port);
  if (!server.listen(host, port)) {
    std::fprintf(stderr, "teamsim: cannot bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  return 0;
}

}  // namespace teamsim
