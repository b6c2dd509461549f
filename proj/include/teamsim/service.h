#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "teamsim/inc_engine.h"

namespace httplib {
class Server;
}

namespace teamsim {

// HTTP/JSON front end over a set of sessions.
//   POST /sessions                 create (201), 400 parse error, 422 disconnected pattern
//   POST /sessions/{id}/updates    apply one set; 404, 409 while another set is in flight, 422 invalid set
//   GET  /sessions/{id}            summary
//   GET  /sessions/{id}/teams      current top-k with quality
//   GET  /sessions/{id}/pattern    pattern, fragments and cut
//   GET  /sessions/{id}/stats      cumulative counters and the last update's stats
//   DELETE /sessions/{id}
class Service {
 public:
  struct Entry {
    std::string id;
    std::unique_ptr<Session> session;
    std::shared_mutex mu;
    std::atomic<bool> busy{false};
  };

  void mount(httplib::Server& server);
  std::shared_ptr<Entry> find(const std::string& id);

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::size_t next_id_ = 1;
};

// Parses "host:port" (TEAMSIM_ADDR format); defaults to 127.0.0.1:8080.
std::pair<std::string, int> parse_bind_address(const std::string& addr);

// Blocks serving on the address.
int serve(const std::string& addr);

}  // namespace teamsim
