// Copyright 2026 The Junction Sim Authors
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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "junction/planner/session.hpp"

namespace junction::planner {

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

/// Maps one HTTP request onto the session. Everything under /api is
/// JSON except the grid, which is served as CGRD bytes with the grid's
/// version in X-Grid-Version. Other paths are static files below
/// `static_root`, or a placeholder page when none is configured.
HttpReply route_request(Session& session, const std::string& method, const std::string& target,
                        const std::string& body, const std::optional<std::filesystem::path>& static_root);

struct ServerOptions {
  std::string address = "127.0.0.1";
  /// 0 picks a free port.
  unsigned short port = 8080;
  std::optional<std::filesystem::path> static_root;
};

/// HTTP and WebSocket (/api/events) on one port.
class Server {
 public:
  Server(Session& session, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and serves on a background thread.
  void start();
  /// Port actually bound; valid after start().
  unsigned short port() const;
  /// Blocks until stop() is called from another thread or a signal arrives.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace junction::planner
