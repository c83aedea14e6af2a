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

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/http/message.hpp>
#include <boost/beast/http/string_body.hpp>

#include "algedon/monitor.hpp"

namespace algedon::app {

/// HTTP + WebSocket front end for a Monitor. Each connection runs on its own
/// thread with blocking I/O; WS /stream subscribers receive every frame
/// published after they connect, in publication order.
class Server {
 public:
  Server(Monitor& monitor, std::string bind_address, std::uint16_t port);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts accepting. Returns the bound port (useful with port 0).
  /// Throws algedon::Error(kIo) when the address cannot be bound.
  std::uint16_t start();
  void stop();

  void publish(const std::string& frame);
  std::size_t subscriber_count() const;

 private:
  struct Subscriber {
    std::mutex mutex;
    std::condition_variable ready;
    std::deque<std::string> frames;
    bool closed = false;
  };

  struct Connection {
    std::thread thread;
    int fd = -1;
    std::atomic<bool> done{false};
  };

  void accept_next();
  void serve(boost::asio::ip::tcp::socket socket, Connection* connection);
  void stream(boost::asio::ip::tcp::socket socket,
              const boost::beast::http::request<boost::beast::http::string_body>& upgrade);
  void reap_finished();

  Monitor& monitor_;
  std::string bind_address_;
  std::uint16_t port_;
  boost::asio::io_context ioc_;
  boost::asio::ip::tcp::acceptor acceptor_;
  std::thread io_thread_;
  std::atomic<bool> running_{false};

  mutable std::mutex connections_mutex_;
  std::list<std::unique_ptr<Connection>> connections_;

  mutable std::mutex subscribers_mutex_;
  std::list<std::shared_ptr<Subscriber>> subscribers_;
};

/// Publishes every monitor update to the server's /stream subscribers: a
/// posterior frame, then for a signal the signal frame and a fresh report.
void connect_stream(Monitor& monitor, Server& server);

}  // namespace algedon::app
