#pragma once

// HTTP/JSON sessions of the switching game. The handlers are plain functions
// of (path parameters, body) so tests can call them without a socket; the
// httplib wiring is a thin layer on top.

#include "gbg/board.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace httplib {
class Server;
}

namespace gbg {

using Json = nlohmann::json;

struct ServiceOptions {
  std::size_t max_sessions = 256;  // least recently used sessions are evicted beyond this
  std::size_t oracle_cap = 24;
  std::size_t max_points = 1024;
};

struct Session {
  Session(std::string id, Configuration board);

  const std::string id;
  const std::chrono::system_clock::time_point created_at;
  mutable std::shared_mutex mutex;  // writers: switch, undo; readers: everything else
  Configuration board;
  std::vector<std::size_t> history;  // undo stack of line indices
};

class SessionStore {
 public:
  explicit SessionStore(std::size_t capacity);

  std::shared_ptr<Session> create(Configuration board);
  // Null when unknown or evicted. Marks the session as recently used.
  std::shared_ptr<Session> find(const std::string& id);
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

 private:
  std::string fresh_id();

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<std::string> recency_;  // front is most recent
  std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, std::list<std::string>::iterator>> sessions_;
  std::mt19937_64 rng_;
};

struct Reply {
  int status = 200;
  Json body;
};

// Integers within +-2^53 become JSON numbers, larger ones decimal strings.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);
Json line_key_to_json(const LineKey& key);
LineKey line_key_from_json(const Json& j);

class GameService {
 public:
  explicit GameService(ServiceOptions options = {});

  Reply create_session(const Json& body);
  Reply get_session(const std::string& id);
  Reply apply_switch(const std::string& id, const Json& body);
  Reply undo(const std::string& id);
  Reply hint(const std::string& id, const Json& body);
  Reply oracle(const std::string& id);
  Reply health() const;

  SessionStore& store() { return store_; }
  const ServiceOptions& options() const { return options_; }

 private:
  ServiceOptions options_;
  SessionStore store_;
};

// Registers every endpoint on `server`; unparseable JSON bodies answer 400.
void install_routes(httplib::Server& server, GameService& service);

// Blocks serving on host:port until the process is stopped.
void serve(const std::string& host, int port, ServiceOptions options = {});

}  // namespace gbg
