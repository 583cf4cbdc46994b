#pragma once

// Hand-written operation sequences and fixed-seed traces shared by unit and
// acceptance tests.

#include <utility>
#include <vector>

#include "naa/fsmodel.hpp"

namespace golden {

using naa::EventKind;
using naa::FsEvent;

inline std::vector<FsEvent> sequence(std::initializer_list<EventKind> kinds, const char* path = "/f") {
    std::vector<FsEvent> out;
    double t = 0;
    for (EventKind k : kinds) out.push_back({t += 0.01, k, path});
    return out;
}

namespace tasks {

using K = EventKind;

inline std::vector<FsEvent> encrypt() {
    return sequence({K::open, K::create, K::open, K::read, K::write, K::close, K::close, K::remove});
}
inline std::vector<FsEvent> modify() {
    return sequence({K::open, K::read, K::close, K::open, K::create, K::open, K::close, K::write, K::close});
}
inline std::vector<FsEvent> compress() {
    return sequence({K::open, K::create, K::open, K::read, K::close, K::write, K::close});
}
inline std::vector<FsEvent> decompress() { return sequence({K::open, K::read, K::close}); }
inline std::vector<FsEvent> browse_reads_then_write() {
    return sequence({K::create, K::open, K::write, K::close, K::read, K::read, K::read, K::write});
}
// The leading write stands for the tail of earlier activity.
inline std::vector<FsEvent> browse_read_write_pairs() {
    return sequence({K::write, K::read, K::write, K::read, K::write, K::read, K::write, K::read, K::write});
}

}  // namespace tasks

inline naa::Trace ransomware_trace(double rate, std::uint64_t seed = 1) {
    naa::WorkloadSpec s;
    s.cls = naa::WorkloadClass::ransomware;
    s.ops_per_second = rate;
    s.file_count = 100;
    s.file_size_bytes = 1024;
    return naa::gen_trace(s, seed);
}

inline naa::Trace browse_trace(double rate, std::uint64_t seed = 1) {
    naa::WorkloadSpec s;
    s.cls = naa::WorkloadClass::browse;
    s.ops_per_second = rate;
    s.file_count = 40;
    return naa::gen_trace(s, seed);
}

// A {read, write} match followed by read/write stamps 1/495 s apart, so the
// first 100 stamps span 99/495 = 0.2 s: 100 / 0.2 = 500 op/s.
inline std::pair<std::vector<FsEvent>, naa::FileTable> boundary_500() {
    std::vector<FsEvent> ev;
    ev.push_back({0.0, EventKind::open, "/in.txt"});
    for (int k = 0; k < 120; ++k) {
        ev.push_back({k / 495.0, k % 2 == 0 ? EventKind::read : EventKind::write, "/out.gnncry"});
    }
    naa::FileTable files;
    naa::FileModel out;
    out.path = "/out.gnncry";
    out.extension = "gnncry";
    files.put(out);
    return {ev, files};
}

}  // namespace golden
