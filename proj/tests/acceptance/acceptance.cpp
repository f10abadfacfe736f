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

// Standalone acceptance run: one PASS/FAIL line per criterion, non-zero exit
// status if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "base64_reference.hpp"
#include "detail/xml.hpp"
#include "peers.hpp"
#include "process.hpp"
#include "test_support.hpp"
#include "xchannel/base64.hpp"
#include "xchannel/http.hpp"
#include "xchannel/soap_envelope.hpp"
#include "xchannel/udp_demux.hpp"

using namespace xchannel;
using namespace xchannel::testing;
using namespace std::chrono_literals;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

/// Collects the reasons a criterion failed; empty means pass.
struct Verdict {
    std::vector<std::string> problems;
    std::string detail;

    void require(bool ok, std::string what) {
        if (!ok) problems.push_back(std::move(what));
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

std::uint64_t fnv1a(const Bytes& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : data) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Bytes read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return Bytes(std::istreambuf_iterator<char>(in), {});
}

// ---------------------------------------------------------------------------

Verdict spi_conformance() {
    Verdict v;
    const auto start = Clock::now();
    int checks = 0;
    for (auto type : channel_type::builtin) {
        const std::string name(type);
        std::unique_ptr<TcpListenPeer> peer;
        std::uint16_t port;
        if (type == channel_type::tcp_client || type == channel_type::soap_client) {
            peer = std::make_unique<TcpListenPeer>();
            port = peer->port();
        } else {
            port = free_port(type.starts_with("udp") ? SOCK_DGRAM : SOCK_STREAM);
        }
        FactoryRegistry registry;
        RecordingHost host;
        auto check = [&](bool ok, const std::string& what) {
            ++checks;
            v.require(ok, name + ": " + what);
        };

        auto made = registry.make(info(type, port, {{"queue_capacity", "4"}}), ChannelId{9}, host);
        check(made.ok(), "constructible");
        if (!made) continue;
        auto ch = std::move(made).value();
        check(ch->id() == ChannelId{9}, "keeps its id");
        check(ch->status() == Status::closed, "fresh status is CLOSED");
        ch->add_message(Message::data(ch->id(), to_bytes("early")));
        check(ch->stats().queued == 0 && ch->stats().dropped == 0, "add before create has no effect");

        check(ch->create() == Status::ok, "create");
        check(ch->create() == Status::closed, "second create is CLOSED");
        check(ch->status() == Status::ok, "status OK while live");
        auto before = ch->stats();
        ch->add_message(Message::connected(ch->id()));
        check(ch->stats().queued == before.queued && ch->stats().dropped == before.dropped,
              "non-DATA ignored");
        auto t = Clock::now();
        ch->add_message(Message::data(ch->id(), to_bytes("x")));
        check(Clock::now() - t < 50ms, "add_message returns promptly");

        check(ch->destroy() == Status::ok, "destroy");
        check(ch->destroy() == Status::ok, "destroy is idempotent");
        check(ch->status() == Status::closed, "destroyed status is CLOSED");
        check(ch->create() == Status::closed, "create after destroy is CLOSED");
        auto final_stats = ch->stats();
        ch->add_message(Message::data(ch->id(), to_bytes("late")));
        check(ch->stats().queued == final_stats.queued && ch->stats().dropped == final_stats.dropped,
              "add after destroy has no effect");
    }
    const double took = seconds_since(start);
    v.require(took < 10.0, "took " + fmt_seconds(took));
    v.detail = std::to_string(checks) + " checks over 6 types in " + fmt_seconds(took);
    return v;
}

Verdict handler_contract() {
    Verdict v;
    constexpr int kProducers = 8;
    constexpr std::uint64_t kEach = 10000;
    const auto start = Clock::now();
    ChannelHandler handler;
    register_burst(handler.registry());
    std::vector<ChannelId> ids;
    for (int i = 0; i < kProducers; ++i) {
        auto id = handler.create_channel(
            ChannelInfo{"burst", Endpoint{"local", 1}, {{"count", std::to_string(kEach)}}});
        v.require(id.ok(), "producer creation");
        if (id) ids.push_back(*id);
    }
    auto all = collect_n(handler, kProducers * kEach, 30s);
    // Anything beyond the expected count would be a duplicate.
    auto extra = collect_n(handler, 1, 200ms);

    std::map<std::uint32_t, std::uint64_t> next;
    std::size_t out_of_order = 0;
    std::set<std::pair<std::uint32_t, std::uint64_t>> seen;
    for (const auto& m : all) {
        const auto seq = sequence_of(m.payload);
        if (!seen.emplace(m.channel_id.value, seq).second) continue;
        if (seq != next[m.channel_id.value]) ++out_of_order;
        next[m.channel_id.value] = seq + 1;
    }
    const double took = seconds_since(start);
    v.require(all.size() == kProducers * kEach, "received " + std::to_string(all.size()));
    v.require(extra.empty(), "extra messages after the expected count");
    v.require(seen.size() == kProducers * kEach, "distinct " + std::to_string(seen.size()));
    v.require(out_of_order == 0, std::to_string(out_of_order) + " out of order");
    v.require(took < 30.0, "took " + fmt_seconds(took));
    v.detail = std::to_string(all.size()) + " messages, " + std::to_string(seen.size()) + " distinct, " +
               std::to_string(out_of_order) + " out of order, " + fmt_seconds(took);
    return v;
}

/// One channelctl send/serve pair. Returns the received file, if any.
struct Transfer {
    int send_rc = -1;
    int serve_rc = -1;
    std::vector<Bytes> files;
    double seconds = 0;
    std::string log;
};

Transfer transfer(const std::string& type, const fs::path& input, const fs::path& work) {
    Transfer t;
    const auto port = free_port(type == "udp" ? SOCK_DGRAM : SOCK_STREAM);
    const std::string addr = "127.0.0.1:" + std::to_string(port);
    const fs::path out = work / ("out-" + type);
    fs::remove_all(out);

    Process serve({CHANNELCTL_PATH, "serve", "--type", type, "--addr", addr, "--out", out.string()},
                  (work / ("serve-" + type + ".log")).string());
    if (!wait_until([&] { return serve.output().find("listening on") != std::string::npos; })) {
        t.log = serve.output();
        return t;
    }
    const auto start = Clock::now();
    Process send({CHANNELCTL_PATH, "send", "--type", type, "--addr", addr, "--file", input.string()},
                 (work / ("send-" + type + ".log")).string());
    t.send_rc = send.wait_for(60s).value_or(-1);

    const auto expected = fs::file_size(input);
    auto total = [&] {
        std::uintmax_t n = 0;
        if (fs::exists(out)) {
            for (const auto& e : fs::directory_iterator(out)) n += fs::file_size(e.path());
        }
        return n;
    };
    wait_until([&] { return total() >= expected; }, 10s);
    t.seconds = seconds_since(start);
    serve.interrupt();
    t.serve_rc = serve.wait_for(10s).value_or(-1);
    if (fs::exists(out)) {
        for (const auto& e : fs::directory_iterator(out)) t.files.push_back(read_file(e.path()));
    }
    t.log = send.output() + serve.output();
    return t;
}

fs::path make_work_dir() {
    auto dir = fs::temp_directory_path() / ("xchannel-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path make_input(const fs::path& work) {
    const fs::path input = work / "input.bin";
    const Bytes data = random_bytes(10 << 20, 2024);
    std::ofstream(input, std::ios::binary).write(reinterpret_cast<const char*>(data.data()), data.size());
    return input;
}

Verdict tcp_conservation(const fs::path& input, const fs::path& work) {
    Verdict v;
    const Bytes sent = read_file(input);
    auto t = transfer("tcp", input, work);
    v.require(t.send_rc == 0, "send exit " + std::to_string(t.send_rc));
    v.require(t.serve_rc == 0, "serve exit " + std::to_string(t.serve_rc));
    v.require(t.files.size() == 1, std::to_string(t.files.size()) + " output files");
    const bool same = t.files.size() == 1 && t.files[0] == sent;
    v.require(same, "received bytes differ");
    v.require(t.seconds < 10.0, "took " + fmt_seconds(t.seconds));
    v.detail = "10 MiB, sender " + hex64(fnv1a(sent)) + " receiver " +
               (t.files.empty() ? std::string("-") : hex64(fnv1a(t.files[0]))) + ", " + fmt_seconds(t.seconds);
    if (!v.problems.empty()) v.detail += "\n" + t.log;
    return v;
}

Verdict udp_demux() {
    Verdict v;
    ChannelHandler handler;
    const auto port = free_port(SOCK_DGRAM);
    auto server = handler.create_channel(info(channel_type::udp_server, port));
    v.require(server.ok(), "server create");
    if (!server) return v;

    UdpPeer peers[3];
    const int script[] = {0, 1, 2, 1, 0, 0, 2, 1, 2, 0, 1, 1};
    std::map<std::uint16_t, std::vector<std::string>> sent;
    for (int i = 0; i < 12; ++i) {
        std::string payload = "dgram-" + std::to_string(i) + std::string(i * 37, 'x');
        peers[script[i]].send_to(port, payload);
        sent[peers[script[i]].port()].push_back(payload);
    }
    auto msgs = collect_n(handler, 15, 5s);
    auto extra = collect_n(handler, 1, 200ms);

    std::map<std::uint16_t, ChannelId> id_of_port;
    std::set<ChannelId> announced;
    std::map<ChannelId, std::vector<std::string>> got;
    int connected = 0, data = 0;
    for (const auto& m : msgs) {
        if (m.kind == MessageKind::connected) {
            ++connected;
            announced.insert(m.channel_id);
            if (m.remote) id_of_port[m.remote->port] = m.channel_id;
        } else if (m.kind == MessageKind::data) {
            ++data;
            v.require(announced.count(m.channel_id) == 1, "DATA before CONNECTED");
            got[m.channel_id].push_back(to_string(m.payload));
        }
    }
    v.require(connected == 3, std::to_string(connected) + " CONNECTED");
    v.require(announced.size() == 3, "ids not distinct");
    v.require(data == 12, std::to_string(data) + " DATA for 12 datagrams");
    v.require(extra.empty(), "unexpected extra messages");
    for (auto& p : peers) {
        auto it = id_of_port.find(p.port());
        v.require(it != id_of_port.end() && got[it->second] == sent[p.port()],
                  "payload sequence for source port " + std::to_string(p.port()));
    }
    v.detail = "3 sources, " + std::to_string(connected) + " CONNECTED, " + std::to_string(data) +
               " DATA for 12 datagrams";
    return v;
}

Verdict udp_idle_expiry() {
    Verdict v;
    // Under the injected clock.
    std::uint32_t next = 1;
    UdpDemux demux([&] { return ChannelId{next++}; }, 1s);
    const auto t0 = UdpDemux::Clock::time_point{} + 100s;
    const Endpoint peer{"127.0.0.1", 40000};
    const auto first = demux.demux(to_bytes("a"), peer, t0).child;
    v.require(demux.sweep(t0 + 1000ms).empty(), "expired at exactly the timeout");
    auto gone = demux.sweep(t0 + 1001ms);
    v.require(gone.size() == 1 && gone[0].kind == MessageKind::disconnected && gone[0].channel_id == first,
              "not DISCONNECTED just past the timeout");
    auto again = demux.demux(to_bytes("b"), peer, t0 + 1500ms);
    v.require(again.is_new && again.child != first, "re-contact did not get a fresh id");

    // And on a live socket.
    ChannelHandler handler;
    const auto port = free_port(SOCK_DGRAM);
    auto server = handler.create_channel(info(channel_type::udp_server, port, {{"idle_timeout", "1"}}));
    v.require(server.ok(), "server create");
    if (!server) return v;
    UdpPeer live;
    live.send_to(port, "hello");
    auto hello = collect_n(handler, 2);
    const auto silent_since = Clock::now();
    v.require(hello.size() == 2, "no CONNECTED/DATA");
    if (hello.size() != 2) return v;
    auto bye = collect_n(handler, 1, 3s);
    const double waited = seconds_since(silent_since);
    v.require(bye.size() == 1 && bye[0].kind == MessageKind::disconnected &&
                  bye[0].channel_id == hello[0].channel_id,
              "no DISCONNECTED");
    v.require(waited <= 2.0, "DISCONNECTED after " + fmt_seconds(waited));
    live.send_to(port, "back");
    auto back = collect_n(handler, 2);
    v.require(back.size() == 2 && back[0].kind == MessageKind::connected &&
                  back[0].channel_id != hello[0].channel_id,
              "live re-contact did not get a fresh id");
    v.detail = "test clock: expiry at 1.001 s, fresh id; live socket: DISCONNECTED after " + fmt_seconds(waited);
    return v;
}

Verdict soap_golden() {
    Verdict v;
    std::ifstream in(std::string(XCHANNEL_GOLDEN_DIR) + "/raw_data_envelope_hi.xml", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string golden = ss.str();
    const std::string first = soap::encode_raw_data_envelope(to_bytes("hi"));
    const std::string second = soap::encode_raw_data_envelope(to_bytes("hi"));
    v.require(!golden.empty(), "golden file missing");
    v.require(first == golden, "encoding differs from golden");
    v.require(first == second, "encoding not deterministic");
    for (const char* needle : {
             "xmlns:SOAP-ENV=\"http://schemas.xmlsoap.org/soap/envelope/\"",
             "xmlns:SOAP-ENC=\"http://schemas.xmlsoap.org/soap/encoding/\"",
             "xmlns:xsi=\"http://www.w3.org/1999/XMLSchema-instance\"",
             "xmlns:xsd=\"http://www.w3.org/1999/XMLSchema\"",
             "xmlns:ns=\"urn:simple-calc\"",
             "<ns:rawDataMessage>",
             "xsi:type=\"xsd:base64Binary\"",
         }) {
        v.require(golden.find(needle) != std::string::npos, std::string("golden lacks ") + needle);
    }
    auto tree = detail::parse_xml(golden);
    v.require(tree.ok(), "golden does not parse");
    if (tree) {
        const auto& env = *tree;
        bool shape = env.name == "SOAP-ENV:Envelope" && env.children.size() == 1 &&
                     env.children[0].name == "SOAP-ENV:Body" && env.children[0].children.size() == 1 &&
                     env.children[0].children[0].name == "ns:rawDataMessage" &&
                     env.children[0].children[0].children.size() == 1 &&
                     env.children[0].children[0].children[0].name == "data" &&
                     env.children[0].children[0].children[0].text == "aGk=";
        v.require(shape, "element tree is not Envelope{Body{rawDataMessage{data}}}");
    }
    v.detail = std::to_string(golden.size()) + " bytes, byte-identical, 5 namespace URIs present";
    return v;
}

Verdict soap_round_trip() {
    Verdict v;
    std::mt19937_64 rng(77);
    int envelope_mismatch = 0, base64_mismatch = 0;
    for (int i = 0; i < 1000; ++i) {
        // Mostly small, with a tail of large payloads up to 1 MiB.
        std::size_t len;
        switch (i % 4) {
            case 0: len = rng() % 64; break;
            case 1: len = rng() % 4096; break;
            case 2: len = rng() % 65536; break;
            default: len = (i % 20 == 3) ? (1 << 20) - rng() % 1024 : rng() % (1 << 20); break;
        }
        if (i == 0) len = 0;
        const Bytes payload = random_bytes(len, rng());
        auto back = soap::decode_raw_data_envelope(soap::encode_raw_data_envelope(payload));
        if (!back || *back != payload) ++envelope_mismatch;
    }
    for (int b = 0; b < 256; ++b) {
        const Bytes payload{static_cast<std::uint8_t>(b)};
        auto back = soap::decode_raw_data_envelope(soap::encode_raw_data_envelope(payload));
        if (!back || *back != payload) ++envelope_mismatch;
    }
    for (int i = 0; i < 10000; ++i) {
        const Bytes input = random_bytes(rng() % 300, rng());
        const std::string encoded = base64_encode(input);
        auto decoded = base64_decode(encoded);
        if (encoded != reference_base64(input) || !decoded || *decoded != input) ++base64_mismatch;
    }
    v.require(envelope_mismatch == 0, std::to_string(envelope_mismatch) + " envelope mismatches");
    v.require(base64_mismatch == 0, std::to_string(base64_mismatch) + " base64 mismatches");
    v.detail = "1000 random + 256 single-byte envelopes, 10000 base64 inputs: " +
               std::to_string(envelope_mismatch + base64_mismatch) + " mismatches";
    return v;
}

Verdict http_split_invariance() {
    Verdict v;
    const auto start = Clock::now();
    const std::string envelope = soap::encode_raw_data_envelope(random_bytes(3000, 8));
    const std::string request = http::frame_request(http::as_bytes(envelope), "127.0.0.1:8080", "/soap");
    http::HttpParser whole;
    whole.feed(request);
    const auto reference = whole.next();
    v.require(reference.has_value(), "unsplit request did not parse");
    std::size_t differing = 0;
    for (std::size_t split = 0; split <= request.size(); ++split) {
        http::HttpParser parser;
        const bool fed = parser.feed(std::string_view(request).substr(0, split)) == Status::ok &&
                         parser.feed(std::string_view(request).substr(split)) == Status::ok;
        auto got = parser.next();
        if (!fed || !got || !reference || *got != *reference || parser.next()) ++differing;
    }
    const double took = seconds_since(start);
    v.require(differing == 0, std::to_string(differing) + " splits differ");
    v.require(took < 10.0, "took " + fmt_seconds(took));
    v.detail = std::to_string(request.size() + 1) + " splits, " + std::to_string(differing) + " differ, " +
               fmt_seconds(took);
    return v;
}

Verdict transport_swap(const fs::path& input, const fs::path& work) {
    Verdict v;
    const Bytes sent = read_file(input);
    const auto digest = hex64(fnv1a(sent));
    v.detail = "input " + digest + ":";
    for (std::string type : {"tcp", "udp", "soap"}) {
        auto t = transfer(type, input, work);
        const bool same = t.send_rc == 0 && t.serve_rc == 0 && t.files.size() == 1 && t.files[0] == sent;
        v.require(same, type + " run did not reproduce the input (send " + std::to_string(t.send_rc) +
                            ", serve " + std::to_string(t.serve_rc) + ", files " +
                            std::to_string(t.files.size()) + ")");
        v.detail += " " + type + "=" + (t.files.size() == 1 ? hex64(fnv1a(t.files[0])) : std::string("-")) +
                    " (" + fmt_seconds(t.seconds) + ")";
        if (!same) v.detail += "\n" + t.log;
    }
    return v;
}

Verdict non_blocking() {
    Verdict v;
    constexpr std::size_t kCapacity = 256;
    constexpr int kAttempts = 1000;
    TcpListenPeer never_reads;
    FactoryRegistry registry;
    RecordingHost host;
    auto made = registry.make(info(channel_type::tcp_client, never_reads.port(),
                                   {{"queue_capacity", std::to_string(kCapacity)}}),
                              ChannelId{1}, host);
    v.require(made.ok(), "construct");
    if (!made) return v;
    auto channel = std::move(made).value();
    v.require(channel->create() == Status::ok, "create");
    Fd accepted = never_reads.accept();

    // Wedge the writer: this message is far larger than the socket buffers
    // the silent peer can absorb, so it stays in flight.
    channel->add_message(Message::data(channel->id(), Bytes(64 << 20, 0x5a)));
    wait_until([&] { return channel->stats().queued == 1; });
    std::this_thread::sleep_for(200ms);
    const auto before = channel->stats();

    std::vector<double> micros;
    micros.reserve(kAttempts);
    for (int i = 0; i < kAttempts; ++i) {
        Message msg = Message::data(channel->id(), Bytes(512, static_cast<std::uint8_t>(i)));
        const auto t = Clock::now();
        channel->add_message(std::move(msg));
        micros.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t).count());
    }
    const auto after = channel->stats();
    std::sort(micros.begin(), micros.end());
    const double p99 = micros[static_cast<std::size_t>(kAttempts * 0.99) - 1];
    const auto dropped = after.dropped - before.dropped;
    const auto expected_drops = static_cast<std::uint64_t>(kAttempts - kCapacity);

    v.require(before.sent == 0, "the wedge message completed; peer is reading");
    v.require(p99 < 1000.0, "p99 " + std::to_string(p99) + " us");
    v.require(dropped == expected_drops,
              "dropped " + std::to_string(dropped) + ", expected " + std::to_string(expected_drops));
    channel->destroy();

    char buf[160];
    std::snprintf(buf, sizeof buf, "p99 %.1f us, max %.1f us, dropped %llu of %d attempts (capacity %zu)", p99,
                  micros.back(), static_cast<unsigned long long>(dropped), kAttempts, kCapacity);
    v.detail = buf;
    return v;
}

}  // namespace

int main() {
    const fs::path work = make_work_dir();
    const fs::path input = make_input(work);

    struct Criterion {
        int number;
        const char* name;
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "SPI conformance", spi_conformance},
        {2, "handler contract", handler_contract},
        {3, "TCP byte conservation", [&] { return tcp_conservation(input, work); }},
        {4, "UDP demultiplexing", udp_demux},
        {5, "UDP idle expiry", udp_idle_expiry},
        {6, "SOAP golden envelope", soap_golden},
        {7, "SOAP round trip", soap_round_trip},
        {8, "HTTP split invariance", http_split_invariance},
        {9, "transport swap", [&] { return transport_swap(input, work); }},
        {10, "non-blocking add_message", non_blocking},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.problems.push_back(std::string("exception: ") + e.what());
        }
        const bool pass = v.problems.empty();
        failed += pass ? 0 : 1;
        std::printf("criterion %2d %-26s %s  %s\n", c.number, c.name, pass ? "PASS" : "FAIL", v.detail.c_str());
        for (const auto& p : v.problems) std::printf("    - %s\n", p.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    fs::remove_all(work);
    return failed == 0 ? 0 : 1;
}
