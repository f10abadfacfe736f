// Copyright 2026 The xchannel Authors
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
#include "xchannel/soap_channel.hpp"

#include <sys/socket.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <thread>

#include "detail/listener.hpp"
#include "detail/socket.hpp"
#include "xchannel/http.hpp"
#include "xchannel/soap_envelope.hpp"

namespace xchannel {

namespace {

struct SoapSettings {
    std::size_t queue_capacity = kDefaultQueueCapacity;
    std::size_t read_buffer = kDefaultReadBuffer;
    bool nodelay = true;
    std::string urn;
    std::string path;
    std::chrono::milliseconds reply_wait{100};
};

Result<SoapSettings> soap_settings(const ChannelInfo& info) {
    auto capacity = option_uint(info, option::queue_capacity, kDefaultQueueCapacity, 1);
    auto read_buffer = option_uint(info, option::read_buffer, kDefaultReadBuffer, 1, 64 << 20);
    auto nodelay = option_bool(info, option::nodelay, true);
    auto reply_wait = option_uint(info, option::reply_wait_ms, 100, 0, 60'000);
    if (!capacity || !read_buffer || !nodelay || !reply_wait) return Status::bad_info;
    SoapSettings s;
    s.queue_capacity = *capacity;
    s.read_buffer = *read_buffer;
    s.nodelay = *nodelay;
    s.urn = option_text(info, option::soap_urn, soap::kDefaultUrn);
    s.path = option_text(info, option::http_path, "/");
    s.reply_wait = std::chrono::milliseconds(*reply_wait);
    if (s.urn.empty() || s.path.empty() || s.path.front() != '/' ||
        s.path.find_first_of(" \r\n") != std::string::npos) {
        return Status::bad_info;
    }
    return s;
}

/// Outcome of pumping a socket into an HttpParser.
enum class Pump { message, closed, stopped, bad };

Pump next_message(int fd, const detail::WakeEvent& wake, http::HttpParser& parser, Bytes& buffer,
                  http::HttpMessage& out) {
    for (;;) {
        if (auto msg = parser.next()) {
            out = std::move(*msg);
            return Pump::message;
        }
        if (parser.status() != Status::ok) return Pump::bad;
        auto ready = detail::wait_readable(fd, wake, -1);
        if (ready == detail::Readiness::woken) return Pump::stopped;
        if (ready == detail::Readiness::error) return Pump::closed;
        if (ready != detail::Readiness::readable) continue;
        ssize_t n = ::recv(fd, buffer.data(), buffer.size(), 0);
        if (n == 0) return Pump::closed;
        if (n < 0) {
            if (errno == EINTR || errno == EAGAIN) continue;
            return Pump::closed;
        }
        parser.feed(std::span<const std::uint8_t>(buffer.data(), static_cast<std::size_t>(n)));
    }
}

bool send_text(int fd, const std::string& text) { return detail::write_all(fd, http::as_bytes(text)); }

/// Each add_message becomes one POST; the response's rawDataMessage, when
/// non-empty, comes back as DATA on this channel. Requests are strictly
/// sequential.
class SoapClientChannel final : public ChannelBase {
public:
    SoapClientChannel(ChannelId id, ChannelHost& host, SoapSettings settings, Endpoint server)
        : ChannelBase(id, host, settings.queue_capacity),
          settings_(std::move(settings)),
          server_(std::move(server)),
          host_header_(format_endpoint(server_)) {}

    ~SoapClientChannel() override { destroy(); }

private:
    Status do_create() override {
        auto connected = detail::connect_tcp(server_);
        if (!connected) return connected.status();
        socket_ = std::move(connected).value();
        detail::set_nodelay(socket_.fd(), settings_.nodelay);
        healthy_.store(true);
        worker_ = std::jthread([this] { work_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        stopping_.store(true);
        wake_.signal();
        socket_.shutdown();
        if (worker_.joinable()) worker_.join();
        socket_.reset();
        healthy_.store(false);
    }

    Status do_status() const override {
        return healthy_.load() ? Status::ok : Status::socket_error;
    }

    void work_loop() {
        Bytes buffer(settings_.read_buffer);
        http::HttpParser parser;
        while (auto payload = queue().pop()) {
            const bool ok = exchange(*payload, parser, buffer);
            queue().complete(ok);
            if (!ok) {
                connection_lost();
                return;
            }
        }
    }

    bool exchange(const Bytes& payload, http::HttpParser& parser, Bytes& buffer) {
        const std::string envelope = soap::encode_raw_data_envelope(payload, settings_.urn);
        if (!send_text(socket_.fd(),
                       http::frame_request(http::as_bytes(envelope), host_header_, settings_.path))) {
            return false;
        }
        http::HttpMessage response;
        if (next_message(socket_.fd(), wake_, parser, buffer, response) != Pump::message) return false;
        if (response.kind != http::HttpMessage::Kind::response) return false;

        if (response.status_code >= 400) {
            host().on_channel_message(Message::error(id(), Status::protocol_error));
            return true;
        }
        if (response.body.empty()) return true;
        auto decoded = soap::decode_raw_data_envelope(to_string(response.body));
        if (!decoded) {
            host().on_channel_message(Message::error(id(), Status::protocol_error));
        } else if (!decoded->empty()) {
            host().on_channel_message(Message::data(id(), std::move(decoded).value()));
        }
        return true;
    }

    void connection_lost() {
        healthy_.store(false);
        if (stopping_.load() || lost_.exchange(true)) return;
        host().on_channel_message(Message::error(id(), Status::socket_error));
        host().on_channel_message(Message::disconnected(id()));
    }

    SoapSettings settings_;
    Endpoint server_;
    std::string host_header_;
    detail::Socket socket_;
    detail::WakeEvent wake_;
    std::atomic<bool> healthy_{false};
    std::atomic<bool> stopping_{false};
    std::atomic<bool> lost_{false};
    std::jthread worker_;
};

/// Server side of one accepted HTTP connection. Every POSTed payload is
/// delivered as DATA; the 200 response carries the next payload the
/// application queued on this child, waiting up to reply_wait for one.
/// Once a wait expires unanswered, later requests stop waiting until the
/// application queues something again.
class SoapConnectionChannel final : public ChannelBase {
public:
    SoapConnectionChannel(ChannelId id, ChannelHost& host, SoapSettings settings,
                          detail::Accepted accepted)
        : ChannelBase(id, host, settings.queue_capacity),
          settings_(std::move(settings)),
          remote_(std::move(accepted.remote)),
          socket_(std::move(accepted.socket)) {}

    ~SoapConnectionChannel() override { destroy(); }

private:
    Status do_create() override {
        detail::set_nodelay(socket_.fd(), settings_.nodelay);
        reader_ = std::jthread([this] { serve_loop(); });
        return Status::ok;
    }

    void do_destroy() override {
        stopping_.store(true);
        wake_.signal();
        socket_.shutdown();
        if (reader_.joinable()) reader_.join();
        socket_.reset();
    }

    Status do_status() const override {
        return lost_.load() ? Status::socket_error : Status::ok;
    }

    void do_add(Bytes payload) override {
        expect_reply_.store(true);
        queue().push(std::move(payload));
    }

    void serve_loop() {
        host().on_channel_message(Message::connected(id(), remote_));
        Bytes buffer(settings_.read_buffer);
        http::HttpParser parser;
        for (;;) {
            http::HttpMessage request;
            switch (next_message(socket_.fd(), wake_, parser, buffer, request)) {
                case Pump::message:
                    if (!respond(request)) return connection_lost();
                    break;
                case Pump::bad:
                    send_fault(parser.error_response_code(),
                               parser.error_response_code() == 501 ? "Not Implemented" : "Bad Request",
                               "unsupported or malformed HTTP framing");
                    return connection_lost();
                case Pump::closed:
                    return connection_lost();
                case Pump::stopped:
                    return;
            }
        }
    }

    bool send_fault(int code, std::string_view reason, std::string_view text) {
        const std::string fault = soap::encode_fault("SOAP-ENV:Client", text);
        return send_text(socket_.fd(), http::frame_response(code, reason, http::as_bytes(fault)));
    }

    bool respond(const http::HttpMessage& request) {
        if (request.kind != http::HttpMessage::Kind::request) {
            return send_fault(400, "Bad Request", "expected a request");
        }
        if (request.method != "POST") return send_fault(405, "Method Not Allowed", "POST only");
        if (settings_.path != "/" && request.target != settings_.path) {
            return send_fault(404, "Not Found", "unknown endpoint path");
        }
        auto payload = soap::decode_raw_data_envelope(to_string(request.body));
        if (!payload) return send_fault(400, "Bad Request", "no decodable rawDataMessage");

        auto data = Message::data(id(), std::move(payload).value());
        data.remote = remote_;
        host().on_channel_message(std::move(data));

        const auto wait = expect_reply_.load() ? settings_.reply_wait : std::chrono::milliseconds(0);
        auto reply = queue().pop_for(wait);
        if (!reply && wait.count() > 0) expect_reply_.store(false);

        const std::string envelope =
            soap::encode_raw_data_envelope(reply ? *reply : Bytes{}, settings_.urn);
        const bool ok = send_text(socket_.fd(), http::frame_response(200, "OK", http::as_bytes(envelope)));
        if (reply) queue().complete(ok);
        return ok;
    }

    void connection_lost() {
        if (stopping_.load() || lost_.exchange(true)) return;
        host().child_closed(id());
    }

    SoapSettings settings_;
    Endpoint remote_;
    detail::Socket socket_;
    detail::WakeEvent wake_;
    std::atomic<bool> expect_reply_{true};
    std::atomic<bool> stopping_{false};
    std::atomic<bool> lost_{false};
    std::jthread reader_;
};

}  // namespace

Result<std::shared_ptr<ChannelComponent>> make_soap_server(const ChannelInfo& info, ChannelId id,
                                                           ChannelHost& host) {
    auto settings = soap_settings(info);
    if (!settings) return settings.status();
    std::shared_ptr<ChannelComponent> server = std::make_shared<detail::ListenerChannel>(
        id, host, info.endpoint,
        [&host, s = *settings](ChannelId child, detail::Accepted accepted) {
            return std::make_shared<SoapConnectionChannel>(child, host, s, std::move(accepted));
        });
    return server;
}

Result<std::shared_ptr<ChannelComponent>> make_soap_client(const ChannelInfo& info, ChannelId id,
                                                           ChannelHost& host) {
    auto settings = soap_settings(info);
    if (!settings) return settings.status();
    std::shared_ptr<ChannelComponent> client =
        std::make_shared<SoapClientChannel>(id, host, *settings, info.endpoint);
    return client;
}

}  // namespace xchannel
