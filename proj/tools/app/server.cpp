// Copyright 2026 The Algedon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "server.hpp"

#include <poll.h>
#include <sys/socket.h>

#include <chrono>

#include <boost/asio/ip/address.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include "algedon/error.hpp"
#include "routes.hpp"

namespace algedon::app {

namespace beast = boost::beast;
namespace http = boost::beast::http;
namespace websocket = boost::beast::websocket;
using tcp = boost::asio::ip::tcp;

namespace {
constexpr std::chrono::milliseconds kStreamPollInterval{50};
}  // namespace

Server::Server(Monitor& monitor, std::string bind_address, std::uint16_t port)
    : monitor_(monitor), bind_address_(std::move(bind_address)), port_(port), acceptor_(ioc_) {}

Server::~Server() { stop(); }

std::uint16_t Server::start() {
  boost::system::error_code ec;
  const auto address = boost::asio::ip::make_address(bind_address_, ec);
  if (ec) throw Error(ErrorKind::kConfig, "invalid bind address '" + bind_address_ + "'");
  const tcp::endpoint endpoint(address, port_);
  acceptor_.open(endpoint.protocol(), ec);
  if (!ec) acceptor_.set_option(boost::asio::socket_base::reuse_address(true), ec);
  if (!ec) acceptor_.bind(endpoint, ec);
  if (!ec) acceptor_.listen(boost::asio::socket_base::max_listen_connections, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot bind " + bind_address_ + ":" + std::to_string(port_) + ": " + ec.message());
  }
  port_ = acceptor_.local_endpoint().port();
  running_ = true;
  accept_next();
  io_thread_ = std::thread([this] { ioc_.run(); });
  spdlog::info("listening on {}:{}", bind_address_, port_);
  return port_;
}

void Server::accept_next() {
  acceptor_.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
    if (ec || !running_) return;
    reap_finished();
    auto connection = std::make_unique<Connection>();
    Connection* raw = connection.get();
    raw->fd = socket.native_handle();
    {
      std::lock_guard lock(connections_mutex_);
      connections_.push_back(std::move(connection));
    }
    raw->thread = std::thread([this, raw, s = std::move(socket)]() mutable { serve(std::move(s), raw); });
    accept_next();
  });
}

void Server::reap_finished() {
  std::lock_guard lock(connections_mutex_);
  for (auto it = connections_.begin(); it != connections_.end();) {
    if ((*it)->done && (*it)->thread.joinable()) {
      (*it)->thread.join();
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void Server::stop() {
  if (!running_.exchange(false)) return;
  boost::asio::post(ioc_, [this] {
    boost::system::error_code ignored;
    acceptor_.close(ignored);
  });
  if (io_thread_.joinable()) io_thread_.join();

  {
    std::lock_guard lock(subscribers_mutex_);
    for (auto& sub : subscribers_) {
      std::lock_guard sub_lock(sub->mutex);
      sub->closed = true;
      sub->ready.notify_all();
    }
  }
  std::list<std::unique_ptr<Connection>> connections;
  {
    std::lock_guard lock(connections_mutex_);
    for (auto& c : connections_) {
      if (!c->done) ::shutdown(c->fd, SHUT_RDWR);
    }
    connections.swap(connections_);
  }
  for (auto& c : connections) {
    if (c->thread.joinable()) c->thread.join();
  }
  spdlog::info("server stopped");
}

void Server::publish(const std::string& frame) {
  std::lock_guard lock(subscribers_mutex_);
  for (auto& sub : subscribers_) {
    std::lock_guard sub_lock(sub->mutex);
    sub->frames.push_back(frame);
    sub->ready.notify_one();
  }
}

std::size_t Server::subscriber_count() const {
  std::lock_guard lock(subscribers_mutex_);
  return subscribers_.size();
}

void Server::serve(tcp::socket socket, Connection* connection) {
  beast::flat_buffer buffer;
  try {
    while (running_) {
      http::request<http::string_body> req;
      boost::system::error_code ec;
      http::read(socket, buffer, req, ec);
      if (ec) break;

      if (websocket::is_upgrade(req)) {
        if (req.target() == "/stream") {
          stream(std::move(socket), req);
        }
        break;
      }

      const std::string method(req.method_string());
      const std::string target(req.target());
      const HttpReply reply = handle_request(monitor_, method, target, req.body());
      spdlog::debug("{} {} -> {}", method, target, reply.status);
      http::response<http::string_body> res{static_cast<http::status>(reply.status), req.version()};
      res.set(http::field::server, "algedon");
      res.set(http::field::content_type, "application/json");
      res.keep_alive(req.keep_alive());
      res.body() = reply.body.dump();
      res.prepare_payload();
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    boost::system::error_code ignored;
    socket.shutdown(tcp::socket::shutdown_send, ignored);
  } catch (const std::exception& e) {
    spdlog::warn("connection error: {}", e.what());
  }
  connection->done = true;
}

void Server::stream(tcp::socket socket, const http::request<http::string_body>& req) {
  websocket::stream<tcp::socket> ws(std::move(socket));
  boost::system::error_code ec;
  ws.accept(req, ec);
  if (ec) return;
  ws.text(true);

  auto sub = std::make_shared<Subscriber>();
  {
    std::lock_guard lock(subscribers_mutex_);
    subscribers_.push_back(sub);
    if (!running_) sub->closed = true;
  }
  spdlog::debug("stream subscriber connected");
  bool peer_closed = false;
  while (!peer_closed) {
    std::string frame;
    {
      std::unique_lock lock(sub->mutex);
      sub->ready.wait_for(lock, kStreamPollInterval, [&] { return sub->closed || !sub->frames.empty(); });
      if (sub->closed && sub->frames.empty()) break;
      if (!sub->frames.empty()) {
        frame = std::move(sub->frames.front());
        sub->frames.pop_front();
      }
    }
    if (!frame.empty()) {
      ws.write(boost::asio::buffer(frame), ec);
      if (ec) break;
      continue;
    }
    // Idle: drain anything the client sent. Inbound messages are ignored; a
    // close frame is answered by the read itself and ends the stream.
    pollfd pfd{ws.next_layer().native_handle(), POLLIN, 0};
    if (::poll(&pfd, 1, 0) > 0) {
      beast::flat_buffer discard;
      ws.read(discard, ec);
      peer_closed = static_cast<bool>(ec);
    }
  }
  {
    std::lock_guard lock(subscribers_mutex_);
    subscribers_.remove(sub);
  }
  if (!peer_closed) ws.close(websocket::close_code::going_away, ec);
}

void connect_stream(Monitor& monitor, Server& server) {
  monitor.set_listener([&monitor, &server](const UpdateOutcome& outcome) {
    server.publish(posterior_frame(monitor.schema(), outcome).dump());
    if (outcome.signal) {
      server.publish(signal_frame(*outcome.signal).dump());
      server.publish(report_frame(monitor.schema(), monitor.report()).dump());
    }
  });
}

}  // namespace algedon::app
