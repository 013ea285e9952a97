// Copyright 2026 The seatwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "seatwalk/runtime.h"

namespace seatwalk {

// Serves the runtime protocol over local TCP. One loop thread owns the
// Runtime; socket threads only push inbound lines onto a queue and the loop
// writes replies and broadcasts back out.
//
// The first client to connect controls the session. Later clients are
// read-only: they may subscribe to telemetry, anything else gets
// {"t":"err","code":"read-only"}. When the controller disconnects the oldest
// remaining client takes over.
class Server {
 public:
  static constexpr std::size_t kMaxLineBytes = 64 * 1024;

  Server(RuntimeConfig config, PlantConfig plant_config, std::uint64_t seed,
         bool balancer = true);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts the threads. Port 0 picks a free port.
  void start(const std::string& host, std::uint16_t port);
  void stop();
  // Blocks up to `timeout`; returns true once the server has stopped.
  bool wait_for(std::chrono::milliseconds timeout);

  std::uint16_t port() const { return port_; }
  std::size_t client_count() const;
  std::int64_t ticks() const { return ticks_.load(); }

 private:
  struct Client {
    int fd = -1;
    bool subscribed = false;
    std::thread reader;
  };
  struct Inbound {
    std::uint64_t client;
    std::string line;
  };

  void accept_loop();
  void read_loop(std::uint64_t id, int fd);
  void control_loop();
  void send_to(std::uint64_t id, const Json& message);
  void broadcast(const Json& message, bool telemetry);
  void drop_client(std::uint64_t id);

  Runtime runtime_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> running_{false};
  std::atomic<std::int64_t> ticks_{0};

  mutable std::mutex clients_mu_;
  std::map<std::uint64_t, std::unique_ptr<Client>> clients_;
  std::uint64_t next_id_ = 1;

  std::mutex inbound_mu_;
  std::deque<Inbound> inbound_;

  std::mutex stop_mu_;
  std::condition_variable stop_cv_;

  std::thread accept_thread_;
  std::thread loop_thread_;
};

}  // namespace seatwalk
