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

#include "junction/planner/server.hpp"

#include <boost/asio/signal_set.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include "junction/common/error.hpp"
#include "junction/io/files.hpp"
#include "junction/io/grid_io.hpp"
#include "junction/io/report_json.hpp"

namespace junction::planner {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedEvents = 256;

HttpReply json_reply(const Reply& r) {
  HttpReply h;
  h.status = r.status;
  h.body = r.body.dump();
  return h;
}

HttpReply json_error(int status, const std::string& message) {
  HttpReply h;
  h.status = status;
  h.body = Json{{"error", message}}.dump();
  return h;
}

std::string content_type_for(const std::filesystem::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

HttpReply static_file(const std::string& path, const std::optional<std::filesystem::path>& root) {
  if (!root) {
    HttpReply h;
    h.content_type = "text/html; charset=utf-8";
    h.body =
        "<!doctype html><title>junction planner</title><p>Planner API is running under /api. "
        "No UI assets are configured.</p>\n";
    return h;
  }
  if (path.find("..") != std::string::npos) return json_error(400, "invalid path");
  std::filesystem::path file = *root / (path == "/" ? "index.html" : path.substr(1));
  if (!std::filesystem::is_regular_file(file)) return json_error(404, "not found: " + path);
  HttpReply h;
  h.content_type = content_type_for(file);
  h.body = io::read_text(file);
  return h;
}

HttpReply grid_reply(Session& session, bool binary) {
  const auto grid = session.latest_grid();
  const auto current = session.version();
  if (!grid) return json_error(404, "no coverage grid computed yet");
  const bool stale = grid->version < current;
  if (binary) {
    const auto bytes = io::encode_grid(grid->grid, grid->version);
    HttpReply h;
    h.content_type = "application/octet-stream";
    h.body.assign(bytes.begin(), bytes.end());
    h.headers["X-Grid-Version"] = std::to_string(grid->version);
    h.headers["X-Scenario-Version"] = std::to_string(current);
    h.headers["X-Grid-Stale"] = stale ? "true" : "false";
    h.headers["X-Coverage-Metrics"] = io::metrics_json(grid->metrics).dump();
    return h;
  }
  Reply r;
  r.body["version"] = grid->version;
  r.body["current_version"] = current;
  r.body["stale"] = stale;
  r.body["metrics"] = io::metrics_json(grid->metrics);
  r.body["pairs"] = io::pairs_json(grid->pairs);
  r.body["grid"] = io::grid_spec_json(grid->grid.spec);
  return json_reply(r);
}

// Fan-out of event text to connected WebSocket clients.
class Hub;

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, std::shared_ptr<Hub> hub) : ws_(std::move(socket)), hub_(std::move(hub)) {}

  void run(http::request<http::string_body> req);
  void send(std::shared_ptr<const std::string> text) {
    net::post(ws_.get_executor(), [self = shared_from_this(), text] { self->enqueue(text); });
  }

 private:
  void on_accept(beast::error_code ec);
  void do_read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }
  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;
    buffer_.consume(buffer_.size());
    do_read();
  }
  void enqueue(std::shared_ptr<const std::string> text) {
    if (queue_.size() >= kMaxQueuedEvents) return;
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) do_write();
  }
  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(*queue_.front()),
                    beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }
  void on_write(beast::error_code ec, std::size_t) {
    if (ec) return;
    queue_.pop_front();
    if (!queue_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  std::shared_ptr<Hub> hub_;
};

class Hub {
 public:
  void add(const std::weak_ptr<WsSession>& s) {
    std::lock_guard lock(mutex_);
    sessions_.push_back(s);
  }
  void broadcast(const std::string& text) {
    auto msg = std::make_shared<const std::string>(text);
    std::vector<std::shared_ptr<WsSession>> live;
    {
      std::lock_guard lock(mutex_);
      std::erase_if(sessions_, [](const auto& w) { return w.expired(); });
      for (const auto& w : sessions_) {
        if (auto s = w.lock()) live.push_back(std::move(s));
      }
    }
    for (auto& s : live) s->send(msg);
  }

 private:
  std::mutex mutex_;
  std::vector<std::weak_ptr<WsSession>> sessions_;
};

void WsSession::run(http::request<http::string_body> req) {
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
}

void WsSession::on_accept(beast::error_code ec) {
  if (ec) return;
  hub_->add(weak_from_this());
  do_read();
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, Session& session, std::shared_ptr<Hub> hub,
              std::optional<std::filesystem::path> static_root)
      : stream_(std::move(socket)), session_(session), hub_(std::move(hub)), static_root_(std::move(static_root)) {}

  void run() { do_read(); }

 private:
  void do_read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(60));
    http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) return do_close();
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      if (std::string(req_.target()) == "/api/events") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), hub_)->run(std::move(req_));
        return;
      }
    }
    HttpReply reply = route_request(session_, std::string(req_.method_string()), std::string(req_.target()),
                                    req_.body(), static_root_);
    auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(reply.status),
                                                                    req_.version());
    res->set(http::field::server, "junction-planner");
    res->set(http::field::content_type, reply.content_type);
    res->set(http::field::cache_control, "no-store");
    for (const auto& [k, v] : reply.headers) res->set(k, v);
    res->keep_alive(req_.keep_alive());
    res->body() = std::move(reply.body);
    res->prepare_payload();
    res_ = res;
    http::async_write(stream_, *res,
                      beast::bind_front_handler(&HttpSession::on_write, shared_from_this(), res->need_eof()));
  }

  void on_write(bool close, beast::error_code ec, std::size_t) {
    if (ec) return;
    if (close) return do_close();
    res_.reset();
    do_read();
  }

  void do_close() {
    beast::error_code ec;
    stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
  std::shared_ptr<http::response<http::string_body>> res_;
  Session& session_;
  std::shared_ptr<Hub> hub_;
  std::optional<std::filesystem::path> static_root_;
};

}  // namespace

HttpReply route_request(Session& session, const std::string& method, const std::string& raw_target,
                        const std::string& body, const std::optional<std::filesystem::path>& static_root) {
  const std::string target = raw_target.substr(0, raw_target.find('?'));
  try {
    if (target.rfind("/api", 0) != 0) {
      if (method != "GET") return json_error(405, "method not allowed");
      return static_file(target, static_root);
    }
    if (target == "/api/scenario") {
      if (method != "GET") return json_error(405, "method not allowed");
      return json_reply(session.get_scenario());
    }
    const std::string cams = "/api/cameras/";
    if (target.rfind(cams, 0) == 0) {
      if (method != "PUT") return json_error(405, "method not allowed");
      const std::string id_text = target.substr(cams.size());
      int id = 0;
      try {
        std::size_t used = 0;
        id = std::stoi(id_text, &used);
        if (used != id_text.size()) throw std::invalid_argument(id_text);
      } catch (const std::exception&) {
        return json_error(404, "unknown camera " + id_text);
      }
      Json patch;
      try {
        patch = parse_json(body);
      } catch (const ParseError& e) {
        return json_error(400, e.what());
      }
      return json_reply(session.patch_camera(id, patch));
    }
    if (target == "/api/coverage/recompute") {
      if (method != "POST") return json_error(405, "method not allowed");
      return json_reply(session.start_recompute());
    }
    if (target == "/api/coverage/grid") {
      if (method != "GET") return json_error(405, "method not allowed");
      return grid_reply(session, true);
    }
    if (target == "/api/coverage/metrics") {
      if (method != "GET") return json_error(405, "method not allowed");
      return grid_reply(session, false);
    }
    if (target == "/api/pairs") {
      if (method != "GET") return json_error(405, "method not allowed");
      return json_reply(session.get_pairs());
    }
    if (target == "/api/job") {
      if (method != "GET") return json_error(405, "method not allowed");
      const auto j = session.job();
      Reply r;
      r.body = {{"job_id", j.job_id}, {"state", to_string(j.state)}, {"progress", j.progress}, {"version", j.version}};
      return json_reply(r);
    }
    return json_error(404, "no such endpoint: " + target);
  } catch (const Error& e) {
    return json_error(422, e.what());
  } catch (const std::exception& e) {
    return json_error(500, e.what());
  }
}

struct Server::Impl {
  Impl(Session& s, ServerOptions o) : session(s), options(std::move(o)), acceptor(ioc), signals(ioc) {}

  void do_accept() {
    acceptor.async_accept(ioc, [this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      std::make_shared<HttpSession>(std::move(socket), session, hub, options.static_root)->run();
      do_accept();
    });
  }

  Session& session;
  ServerOptions options;
  net::io_context ioc{1};
  tcp::acceptor acceptor;
  net::signal_set signals;
  std::shared_ptr<Hub> hub = std::make_shared<Hub>();
  std::thread thread;
  unsigned short port = 0;
};

Server::Server(Session& session, ServerOptions options) : impl_(std::make_unique<Impl>(session, std::move(options))) {}

Server::~Server() {
  stop();
  impl_->session.set_event_sink(nullptr);
}

void Server::start() {
  auto& im = *impl_;
  const tcp::endpoint ep(net::ip::make_address(im.options.address), im.options.port);
  beast::error_code ec;
  im.acceptor.open(ep.protocol(), ec);
  if (!ec) im.acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) im.acceptor.bind(ep, ec);
  if (!ec) im.acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) throw IoError("cannot listen on " + im.options.address + ":" + std::to_string(im.options.port) + ": " +
                        ec.message());
  im.port = im.acceptor.local_endpoint().port();
  im.session.set_event_sink([hub = im.hub](const std::string& text) { hub->broadcast(text); });
  im.do_accept();
  im.thread = std::thread([&im] { im.ioc.run(); });
}

unsigned short Server::port() const { return impl_->port; }

void Server::wait() {
  auto& im = *impl_;
  net::post(im.ioc, [&im] {
    im.signals.add(SIGINT);
    im.signals.add(SIGTERM);
    im.signals.async_wait([&im](beast::error_code, int) { im.ioc.stop(); });
  });
  if (im.thread.joinable()) im.thread.join();
}

void Server::stop() {
  impl_->ioc.stop();
  if (impl_->thread.joinable() && impl_->thread.get_id() != std::this_thread::get_id()) impl_->thread.join();
}

}  // namespace junction::planner
