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

#include "seatwalk/server.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <vector>

#include "seatwalk/error.h"

namespace seatwalk {
namespace {

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

Json error_message(std::string_view code, std::string_view detail) {
  Json j = Json::object();
  j["t"] = "err";
  j["code"] = code;
  j["detail"] = detail;
  return j;
}

}  // namespace

Server::Server(RuntimeConfig config, PlantConfig plant_config, std::uint64_t seed,
               bool balancer)
    : runtime_(std::move(config), std::move(plant_config), seed) {
  runtime_.set_balancer(balancer);
}

Server::~Server() { stop(); }

void Server::start(const std::string& host, std::uint16_t port) {
  if (running_) throw Error("server", "already running");
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error("io", std::strerror(errno));
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error("io", "bad host address " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 8) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error("io", "cannot listen on " + host + ":" + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  accept_thread_ = std::thread([this] { accept_loop(); });
  loop_thread_ = std::thread([this] { control_loop(); });
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  listen_fd_ = -1;
  if (accept_thread_.joinable()) accept_thread_.join();
  if (loop_thread_.joinable()) loop_thread_.join();
  std::map<std::uint64_t, std::unique_ptr<Client>> clients;
  {
    std::lock_guard lock(clients_mu_);
    for (auto& [id, c] : clients_) {
      if (c->fd >= 0) ::shutdown(c->fd, SHUT_RDWR);
    }
    clients.swap(clients_);
  }
  for (auto& [id, c] : clients) {
    if (c->reader.joinable()) c->reader.join();
    if (c->fd >= 0) ::close(c->fd);
  }
  stop_cv_.notify_all();
}

bool Server::wait_for(std::chrono::milliseconds timeout) {
  std::unique_lock lock(stop_mu_);
  return stop_cv_.wait_for(lock, timeout, [this] { return !running_.load(); });
}

std::size_t Server::client_count() const {
  std::lock_guard lock(clients_mu_);
  std::size_t n = 0;
  for (const auto& [id, c] : clients_) n += c->fd >= 0 ? 1 : 0;
  return n;
}

void Server::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    timeval tv{1, 0};
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
    std::lock_guard lock(clients_mu_);
    if (!running_) {
      ::close(fd);
      return;
    }
    const std::uint64_t id = next_id_++;
    auto client = std::make_unique<Client>();
    client->fd = fd;
    client->reader = std::thread([this, id, fd] { read_loop(id, fd); });
    clients_[id] = std::move(client);
  }
}

void Server::read_loop(std::uint64_t id, int fd) {
  std::string buffer;
  char chunk[4096];
  bool discarding = false;
  while (running_) {
    const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t start = 0;
    for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos;
         start = nl + 1) {
      if (discarding) {
        discarding = false;
        continue;
      }
      std::lock_guard lock(inbound_mu_);
      inbound_.push_back({id, buffer.substr(start, nl - start)});
    }
    buffer.erase(0, start);
    if (buffer.size() > kMaxLineBytes) {
      // Drop the oversized line up to its newline and tell the sender once.
      buffer.clear();
      if (!discarding) {
        std::lock_guard lock(inbound_mu_);
        inbound_.push_back({id, std::string()});
      }
      discarding = true;
    }
  }
  drop_client(id);
}

void Server::drop_client(std::uint64_t id) {
  std::lock_guard lock(clients_mu_);
  auto it = clients_.find(id);
  if (it == clients_.end() || it->second->fd < 0) return;
  ::shutdown(it->second->fd, SHUT_RDWR);
  // The reader thread is joined by stop(); the slot just goes dead here.
  it->second->subscribed = false;
  ::close(it->second->fd);
  it->second->fd = -1;
}

void Server::send_to(std::uint64_t id, const Json& message) {
  const std::string line = message.dump() + "\n";
  std::lock_guard lock(clients_mu_);
  auto it = clients_.find(id);
  if (it != clients_.end() && it->second->fd >= 0) send_all(it->second->fd, line);
}

void Server::broadcast(const Json& message, bool telemetry) {
  const std::string line = message.dump() + "\n";
  std::lock_guard lock(clients_mu_);
  for (auto& [id, c] : clients_) {
    if (c->fd < 0 || (telemetry && !c->subscribed)) continue;
    send_all(c->fd, line);
  }
}

void Server::control_loop() {
  using Clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(runtime_.config().dt()));
  auto next = Clock::now();
  while (running_) {
    std::deque<Inbound> batch;
    {
      std::lock_guard lock(inbound_mu_);
      batch.swap(inbound_);
    }
    for (const Inbound& in : batch) {
      if (in.line.empty()) {
        send_to(in.client, error_message("line-too-long", "line exceeds 64 KiB"));
        continue;
      }
      std::uint64_t controller = 0;
      {
        std::lock_guard lock(clients_mu_);
        for (const auto& [id, c] : clients_) {
          if (c->fd >= 0) {
            controller = id;
            break;
          }
        }
      }
      Json message;
      try {
        message = Json::parse(in.line);
      } catch (const Json::exception&) {
        send_to(in.client, error_message("parse", "not a JSON object"));
        continue;
      }
      if (message.is_object() && message.value("t", Json()) == "subscribe") {
        std::lock_guard lock(clients_mu_);
        if (auto it = clients_.find(in.client); it != clients_.end()) {
          it->second->subscribed = true;
        }
      } else if (in.client != controller) {
        send_to(in.client, error_message("read-only", "another client controls the session"));
        continue;
      }
      for (const Json& reply : runtime_.handle(message)) {
        const std::string t = reply.value("t", "");
        if (t == "ack" || t == "err") {
          send_to(in.client, reply);
        } else {
          broadcast(reply, false);
        }
      }
    }

    for (const Json& msg : runtime_.tick()) {
      broadcast(msg, msg.value("t", "") == "telemetry");
    }
    ticks_ = runtime_.tick_count();

    if (runtime_.config().pace) {
      next += period;
      const auto now = Clock::now();
      if (next < now) next = now;
      std::this_thread::sleep_until(next);
    } else {
      std::this_thread::yield();
    }
  }
}

}  // namespace seatwalk
