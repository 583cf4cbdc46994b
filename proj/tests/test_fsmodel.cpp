#include <doctest.h>

#include <cmath>
#include <sstream>

#include "naa/fsmodel.hpp"
#include "naa/rng.hpp"

using namespace naa;

namespace {

// Straight Shannon sum, written without sharing code with the library.
double oracle_entropy(const ByteHistogram& h) {
    double total = 0;
    for (auto c : h) total += static_cast<double>(c);
    double e = 0;
    for (auto c : h) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        e -= p * std::log(p) / std::log(2.0);
    }
    return e;
}

}  // namespace

TEST_CASE("event kind names round-trip") {
    for (EventKind k : {EventKind::open, EventKind::create, EventKind::read, EventKind::write,
                        EventKind::close, EventKind::remove}) {
        CHECK(parse_event_kind(to_string(k)) == k);
    }
    CHECK(to_string(EventKind::remove) == "delete");
    CHECK_FALSE(parse_event_kind("chmod"));
}

TEST_CASE("entropy of small histograms") {
    ByteHistogram h{};
    h['a'] = 3;
    h['b'] = 1;
    CHECK(compute_entropy(h) == doctest::Approx(0.811278).epsilon(1e-6));

    ByteHistogram uniform{};
    uniform.fill(4);
    CHECK(compute_entropy(uniform) == 8.0);

    ByteHistogram single{};
    single[0] = 1000;
    CHECK(compute_entropy(single) == 0.0);

    CHECK_THROWS_AS(compute_entropy(ByteHistogram{}), std::invalid_argument);
}

TEST_CASE("entropy agrees with the oracle on random histograms") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        ByteHistogram h{};
        const auto symbols = rng.between(1, 256);
        for (int s = 0; s < symbols; ++s) h[rng.below(256)] += rng.between(0, 5000);
        h[rng.below(256)] += 1;
        CHECK(compute_entropy(h) == doctest::Approx(oracle_entropy(h)).epsilon(1e-12));
    }
}

TEST_CASE("parallel histogram equals serial") {
    Rng rng(3);
    for (std::size_t n : {0u, 1u, 7u, 4096u, 1000003u}) {
        std::vector<std::uint8_t> bytes(n);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next());
        CHECK(byte_histogram(bytes) == byte_histogram_parallel(bytes));
    }
}

TEST_CASE("extension_of") {
    CHECK(extension_of("/a/b/report.TXT") == "txt");
    CHECK(extension_of("/a/b.d/noext") == "");
    CHECK(extension_of("archive.tar.gz") == "gz");
    CHECK(extension_of("/x/y.") == "");
    CHECK(category_of("log") == FileCategory::text);
    CHECK(category_of("png") == FileCategory::nontext);
}

TEST_CASE("workload spec validation") {
    WorkloadSpec s;
    s.cls = WorkloadClass::ransomware;
    s.ops_per_second = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.ops_per_second = 10;
    s.file_count = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.file_count = 1;
    s.start_time = -1;
    CHECK_THROWS_AS(gen_trace(s, 1), std::invalid_argument);
}

TEST_CASE("ransomware trace has the eight-step shape per file and the requested rate") {
    WorkloadSpec s;
    s.cls = WorkloadClass::ransomware;
    s.ops_per_second = 742;
    s.file_count = 100;
    s.start_time = 0.25;
    const Trace t = gen_trace(s, 42);
    REQUIRE(t.events.size() == 800);
    const EventKind shape[] = {EventKind::open,  EventKind::create, EventKind::open,
                               EventKind::read,  EventKind::write,  EventKind::close,
                               EventKind::close, EventKind::remove};
    for (std::size_t i = 0; i < t.events.size(); ++i) CHECK(t.events[i].kind == shape[i % 8]);
    for (std::size_t i = 1; i < t.events.size(); ++i) CHECK(t.events[i].time >= t.events[i - 1].time);
    CHECK(t.events.front().time >= 0.25);
    const auto rate = realized_rw_rate(t.events);
    REQUIRE(rate);
    CHECK(*rate == doctest::Approx(742).epsilon(1e-9));
    for (const FsEvent& e : t.events) {
        if (e.kind == EventKind::write) {
            auto it = t.created_files.find(e.path);
            REQUIRE(it != t.created_files.end());
            CHECK(it->second.encrypted);
        }
    }
}

TEST_CASE("generated content profiles sit where the entropy thresholds expect") {
    WorkloadSpec s;
    s.cls = WorkloadClass::ransomware;
    s.file_count = 20;
    s.file_size_bytes = 64 * 1024;
    const Trace t = gen_trace(s, 5);
    for (const FileModel& f : t.initial_files) {
        const double e = compute_entropy(f.byte_histogram);
        if (f.category == FileCategory::text) {
            CHECK(e < 6.0);
        } else {
            CHECK(e < 7.99);
        }
    }
    for (const auto& [path, f] : t.created_files) CHECK(compute_entropy(f.byte_histogram) > 7.99);
}

TEST_CASE("same seed, same trace") {
    WorkloadSpec s;
    s.cls = WorkloadClass::browse;
    s.ops_per_second = 200;
    s.file_count = 30;
    CHECK(gen_trace(s, 9).events == gen_trace(s, 9).events);
    CHECK_FALSE(gen_trace(s, 9).events == gen_trace(s, 10).events);
}

TEST_CASE("idle workload is empty") {
    WorkloadSpec s;
    s.cls = WorkloadClass::idle;
    CHECK(gen_trace(s, 1).events.empty());
    CHECK_FALSE(realized_rw_rate({}));
}

TEST_CASE("trace text round-trip") {
    std::vector<FsEvent> events = {{0.5, EventKind::open, "/a b/c.txt"}, {1.25, EventKind::remove, "/x"}};
    std::stringstream ss;
    write_trace(ss, events);
    CHECK(ss.str() == "0.500000\topen\t/a b/c.txt\n1.250000\tdelete\t/x\n");
    CHECK(read_trace(ss) == events);

    std::stringstream bad("0.1\tchmod\t/x\n");
    CHECK_THROWS_AS(read_trace(bad), std::runtime_error);
}

TEST_CASE("file table follows creates and deletes") {
    WorkloadSpec s;
    s.cls = WorkloadClass::ransomware;
    s.file_count = 3;
    const Trace t = gen_trace(s, 1);
    FileTable table(t.initial_files);
    CHECK(table.size() == 3);
    for (const FsEvent& e : t.events) table.apply(e, t);
    CHECK(table.size() == 3);
    for (const auto& [path, f] : t.created_files) CHECK(table.find(path) != nullptr);
    for (const FileModel& f : t.initial_files) CHECK(table.find(f.path) == nullptr);
}
