#include "gbg/service.hpp"

#include "gbg/errors.hpp"
#include "gbg/instances.hpp"
#include "gbg/oracle.hpp"
#include "gbg/solvers.hpp"

#include <httplib.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gbg {

Session::Session(std::string id_, Configuration board_)
    : id(std::move(id_)), created_at(std::chrono::system_clock::now()), board(std::move(board_)) {}

SessionStore::SessionStore(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)), rng_(std::random_device{}()) {}

std::string SessionStore::fresh_id() {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << rng_() << std::setw(16) << rng_();
  return out.str();
}

std::shared_ptr<Session> SessionStore::create(Configuration board) {
  std::lock_guard lock(mutex_);
  std::string id;
  do {
    id = fresh_id();
  } while (sessions_.count(id) != 0);
  auto session = std::make_shared<Session>(id, std::move(board));
  recency_.push_front(id);
  sessions_.emplace(id, std::make_pair(session, recency_.begin()));
  while (sessions_.size() > capacity_) {
    sessions_.erase(recency_.back());
    recency_.pop_back();
  }
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  recency_.splice(recency_.begin(), recency_, it->second.second);
  return it->second.first;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

namespace {

const Integer json_safe_limit = Integer(1) << 53;

// Thrown for request bodies that do not have the expected shape.
class BadRequest : public InputError {
 public:
  using InputError::InputError;
};

Reply error_reply(int status, std::string code, const std::string& message) {
  return {status, Json{{"code", std::move(code)}, {"message", message}}};
}

Json points_to_json(const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(Json::array({integer_to_json(p.x), integer_to_json(p.y)}));
  return out;
}

Json indices_to_json(const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(i);
  return out;
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Caller holds at least a shared lock on the session.
Json state_json(const Session& s) {
  const auto& is = s.board.incidence();
  Json lines = Json::array();
  for (const auto& line : is.lines()) {
    lines.push_back({{"key", line_key_to_json(line.key)}, {"points", indices_to_json(line.points)}});
  }
  Json history = Json::array();
  for (auto i : s.history) history.push_back(line_key_to_json(is.line(i).key));
  const std::size_t n = is.size();
  return {
      {"id", s.id},
      {"created_at", iso_time(s.created_at)},
      {"n", n},
      {"points", points_to_json(is.points())},
      {"weights", s.board.weights()},
      {"initial_weights", s.board.initial_weights()},
      {"lines", std::move(lines)},
      {"discrepancy", s.board.discrepancy()},
      {"history", std::move(history)},
      {"collinear", is.lines().size() == 1},
      {"bounds", {{"third", third_bound(n)}, {"n_minus_2", static_cast<long>(n) - 2}}},
  };
}

Weights weights_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw BadRequest("'weights' must be an array of +1/-1");
  if (j.size() != n) throw BadRequest("'weights' has " + std::to_string(j.size()) + " entries for " + std::to_string(n) + " points");
  Weights w;
  for (const auto& x : j) {
    if (!x.is_number_integer() || (x.get<long>() != 1 && x.get<long>() != -1)) throw BadRequest("weights must be +1 or -1");
    w.push_back(x.get<int>());
  }
  return w;
}

Instance instance_from_body(const Json& body) {
  const int sources = static_cast<int>(body.contains("points")) + static_cast<int>(body.contains("instance")) +
                      static_cast<int>(body.contains("spec"));
  if (sources != 1) throw BadRequest("give exactly one of 'points', 'instance' or 'spec'");
  if (body.contains("instance")) {
    if (!body["instance"].is_string()) throw BadRequest("'instance' must be a string in the point-set format");
    return parse_instance(body["instance"].get<std::string>());
  }
  if (body.contains("spec")) {
    if (!body["spec"].is_string()) throw BadRequest("'spec' must be a key=value string");
    return generate(parse_generator_spec(body["spec"].get<std::string>()));
  }
  const auto& pts = body["points"];
  if (!pts.is_array()) throw BadRequest("'points' must be an array of [x, y]");
  Instance inst;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2) throw BadRequest("each point must be [x, y]");
    inst.points.push_back({integer_from_json(p[0]), integer_from_json(p[1])});
  }
  inst.weights = body.contains("weights") ? weights_from_json(body["weights"], inst.points.size())
                                          : Weights(inst.points.size(), 1);
  return inst;
}

template <class F>
Reply guarded(F&& f) {
  try {
    return f();
  } catch (const UnknownLineError& e) {
    return error_reply(409, "unknown_line", e.what());
  } catch (const PreconditionError& e) {
    return error_reply(422, "precondition", e.what());
  } catch (const InputError& e) {
    return error_reply(400, "bad_request", e.what());
  } catch (const CapExceededError& e) {
    return error_reply(422, "cap_exceeded", e.what());
  } catch (const Json::exception& e) {
    return error_reply(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error_reply(503, "internal", e.what());
  }
}

Reply not_found(const std::string& id) { return error_reply(404, "unknown_session", "no session '" + id + "'"); }

}  // namespace

Json integer_to_json(const Integer& v) {
  if (v < json_safe_limit && v > -json_safe_limit) return v.convert_to<long long>();
  return to_string(v);
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw BadRequest("not an integer: '" + s + "'");
    }
    return Integer(s);
  }
  throw BadRequest("expected an integer or a decimal string, got " + j.dump());
}

Json line_key_to_json(const LineKey& key) {
  return Json::array({integer_to_json(key.a), integer_to_json(key.b), integer_to_json(key.c)});
}

LineKey line_key_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw BadRequest("a line is the triple [a, b, c]");
  return {integer_from_json(j[0]), integer_from_json(j[1]), integer_from_json(j[2])};
}

GameService::GameService(ServiceOptions options) : options_(options), store_(options.max_sessions) {}

Reply GameService::create_session(const Json& body) {
  return guarded([&]() -> Reply {
    if (!body.is_object()) throw BadRequest("request body must be a JSON object");
    auto inst = instance_from_body(body);
    if (inst.points.size() > options_.max_points) {
      throw BadRequest("at most " + std::to_string(options_.max_points) + " points per session");
    }
    auto board = new_board(inst.points, std::move(inst.weights));
    if (body.value("require_solvable", false) && board.incidence().lines().size() == 1) {
      return error_reply(422, "collinear", "all points are collinear; solver endpoints need a noncollinear board");
    }
    auto session = store_.create(std::move(board));
    std::shared_lock lock(session->mutex);
    return {201, state_json(*session)};
  });
}

Reply GameService::get_session(const std::string& id) {
  auto session = store_.find(id);
  if (!session) return not_found(id);
  std::shared_lock lock(session->mutex);
  return {200, state_json(*session)};
}

Reply GameService::apply_switch(const std::string& id, const Json& body) {
  auto session = store_.find(id);
  if (!session) return not_found(id);
  return guarded([&]() -> Reply {
    if (!body.is_object() || !body.contains("line")) throw BadRequest("expected {\"line\": [a, b, c]}");
    const auto key = line_key_from_json(body["line"]);
    std::unique_lock lock(session->mutex);
    const auto index = session->board.incidence().find(key);
    if (!index) throw UnknownLineError("line " + key.to_string() + " is not a connecting line of this board");
    session->board.apply_switch(*index);
    session->history.push_back(*index);
    return {200,
            {{"line", line_key_to_json(key)},
             {"flipped", indices_to_json(session->board.incidence().line(*index).points)},
             {"discrepancy", session->board.discrepancy()},
             {"history_length", session->history.size()}}};
  });
}

Reply GameService::undo(const std::string& id) {
  auto session = store_.find(id);
  if (!session) return not_found(id);
  std::unique_lock lock(session->mutex);
  if (session->history.empty()) return error_reply(409, "empty_history", "nothing to undo");
  const auto index = session->history.back();
  session->history.pop_back();
  session->board.apply_switch(index);
  const auto& line = session->board.incidence().line(index);
  return {200,
          {{"undone", line_key_to_json(line.key)},
           {"flipped", indices_to_json(line.points)},
           {"discrepancy", session->board.discrepancy()},
           {"history_length", session->history.size()}}};
}

Reply GameService::hint(const std::string& id, const Json& body) {
  auto session = store_.find(id);
  if (!session) return not_found(id);
  return guarded([&]() -> Reply {
    std::string name = "auto";
    if (body.is_object() && body.contains("solver")) {
      if (!body["solver"].is_string()) throw BadRequest("'solver' must be a string");
      name = body["solver"].get<std::string>();
    }
    const auto kind = parse_solver(name);
    std::optional<Configuration> current;
    {
      std::shared_lock lock(session->mutex);
      current.emplace(session->board.restarted());
    }
    const auto n = static_cast<long>(current->size());
    if (current->incidence().lines().size() == 1) {
      return error_reply(422, "collinear", "all points are collinear; no solver applies");
    }
    if (current->discrepancy() == n) {
      return {200,
              {{"solver", to_string(kind)}, {"line", nullptr}, {"message", "none needed"}, {"projected", n},
               {"certificate", Json::array()}}};
    }
    SolverOutcome outcome;
    try {
      outcome = run_solver(kind, *current);
    } catch (const InvariantError& e) {
      return error_reply(503, "solver_failure", e.what());
    }
    Json certificate = Json::array();
    for (const auto& key : outcome.certificate.switches) certificate.push_back(line_key_to_json(key));
    Json reply{{"solver", to_string(kind)},
               {"projected", outcome.final_discrepancy},
               {"bound", to_string(outcome.certificate.claimed_bound_kind)},
               {"certificate", std::move(certificate)}};
    if (outcome.certificate.switches.empty()) {
      reply["line"] = nullptr;
      reply["message"] = "none needed";
    } else {
      reply["line"] = line_key_to_json(outcome.certificate.switches.front());
    }
    return {200, std::move(reply)};
  });
}

Reply GameService::oracle(const std::string& id) {
  auto session = store_.find(id);
  if (!session) return not_found(id);
  return guarded([&]() -> Reply {
    std::optional<Configuration> current;
    {
      std::shared_lock lock(session->mutex);
      current.emplace(session->board.restarted());
    }
    const auto& is = current->incidence();
    Json reply{{"n", is.size()}, {"cap", options_.oracle_cap}};
    if (is.size() > options_.oracle_cap || is.size() > max_code_length) {
      reply["cap_exceeded"] = true;
      return {200, std::move(reply)};
    }
    try {
      const auto code = switch_code(is);
      const auto result = exact_F(code, current->weights(), {options_.oracle_cap});
      Json witness = Json::array();
      for (auto i : result.witness) witness.push_back(line_key_to_json(is.line(i).key));
      reply["cap_exceeded"] = false;
      reply["value"] = result.value;
      reply["rank"] = code.rank();
      reply["witness"] = std::move(witness);
    } catch (const CapExceededError&) {
      reply["cap_exceeded"] = true;
    }
    return {200, std::move(reply)};
  });
}

Reply GameService::health() const { return {200, {{"status", "ok"}, {"sessions", store_.size()}}}; }

void install_routes(httplib::Server& server, GameService& service) {
  auto send = [](httplib::Response& res, const Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
  };
  // Empty bodies count as {} so clients may omit them on POST.
  auto parse = [](const httplib::Request& req, Json& out) {
    if (req.body.empty()) {
      out = Json::object();
      return true;
    }
    out = Json::parse(req.body, nullptr, false);
    return !out.is_discarded();
  };
  auto with_body = [send, parse](auto handler) {
    return [send, parse, handler](const httplib::Request& req, httplib::Response& res) {
      Json body;
      if (!parse(req, body)) {
        send(res, error_reply(400, "bad_json", "request body is not valid JSON"));
        return;
      }
      send(res, handler(req, body));
    };
  };

  server.Get("/healthz", [&service, send](const httplib::Request&, httplib::Response& res) { send(res, service.health()); });
  server.Post("/sessions", with_body([&service](const httplib::Request&, const Json& body) {
                return service.create_session(body);
              }));
  server.Get(R"(/sessions/([0-9a-f]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_session(req.matches[1]));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/switch)", with_body([&service](const httplib::Request& req, const Json& body) {
                return service.apply_switch(req.matches[1], body);
              }));
  server.Post(R"(/sessions/([0-9a-f]+)/undo)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.undo(req.matches[1]));
  });
  server.Post(R"(/sessions/([0-9a-f]+)/hint)", with_body([&service](const httplib::Request& req, const Json& body) {
                return service.hint(req.matches[1], body);
              }));
  server.Get(R"(/sessions/([0-9a-f]+)/oracle)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.oracle(req.matches[1]));
  });
  server.set_error_handler([send](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, error_reply(res.status, "not_found", "no such endpoint"));
  });
}

void serve(const std::string& host, int port, ServiceOptions options) {
  GameService service(options);
  httplib::Server server;
  install_routes(server, service);
  if (!server.listen(host, port)) throw InputError("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace gbg
