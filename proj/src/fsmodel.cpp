#include "naa/fsmodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "naa/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace naa {

namespace {

constexpr std::array<std::string_view, 6> kEventNames = {"open",  "create", "read",
                                                         "write", "close",  "delete"};

constexpr std::array<std::string_view, 7> kWorkloadNames = {
    "ransomware", "modify", "compress", "decompress", "browse", "benign_encrypt", "idle"};

// Original-file extensions a user's home directory is populated with.
constexpr std::array<std::string_view, 11> kUserExtensions = {
    "txt", "log", "conf", "png", "jpeg", "pptx", "mp3", "pdf", "html", "css", "php"};

constexpr std::array<std::string_view, 6> kTextExtensions = {"txt", "log",  "conf",
                                                             "html", "css", "php"};

enum class Content { text, binary, random };

// 65536-entry inverse-CDF table: two random bytes pick one output byte.
using SampleTable = std::array<std::uint8_t, 65536>;

SampleTable build_table(const std::array<double, 256>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    std::array<double, 256> cdf{};
    double acc = 0.0;
    for (std::size_t b = 0; b < 256; ++b) {
        acc += weights[b] / total;
        cdf[b] = acc;
    }
    SampleTable table{};
    std::size_t b = 0;
    for (std::size_t u = 0; u < table.size(); ++u) {
        const double x = (static_cast<double>(u) + 0.5) / static_cast<double>(table.size());
        while (b < 255 && cdf[b] <= x) ++b;
        table[u] = static_cast<std::uint8_t>(b);
    }
    return table;
}

// English prose: letters by frequency, spaces, punctuation, a few capitals and digits.
const SampleTable& text_table() {
    static const SampleTable table = [] {
        std::array<double, 256> w{};
        const std::pair<char, double> common[] = {
            {' ', 15.0}, {'e', 10.0}, {'t', 7.0}, {'a', 6.5}, {'o', 6.0}, {'i', 5.7},
            {'n', 5.7},  {'s', 5.1},  {'h', 4.9}, {'r', 4.8}, {'d', 3.4}, {'l', 3.2},
            {'c', 2.2},  {'u', 2.2},  {'m', 1.9}, {'w', 1.8}, {'f', 1.8}, {'g', 1.6},
            {'y', 1.6},  {'p', 1.5},  {'b', 1.2}, {'v', 0.8}, {'k', 0.6}, {'j', 0.1},
            {'x', 0.1},  {'q', 0.1},  {'z', 0.05}, {'\n', 1.5}, {',', 1.0}, {'.', 1.0}};
        for (auto [c, weight] : common) w[static_cast<unsigned char>(c)] = weight;
        for (char c = 'A'; c <= 'Z'; ++c) w[static_cast<unsigned char>(c)] = 0.25;
        for (char c = '0'; c <= '9'; ++c) w[static_cast<unsigned char>(c)] = 0.3;
        return build_table(w);
    }();
    return table;
}

// Media and office formats: near-uniform with a surplus of zero bytes.
const SampleTable& binary_table() {
    static const SampleTable table = [] {
        std::array<double, 256> w{};
        w.fill(1.0);
        w[0] = 9.0;
        return build_table(w);
    }();
    return table;
}

ByteHistogram sample_content(Content content, std::uint64_t size, Rng& rng) {
    ByteHistogram h{};
    std::uint64_t left = size;
    if (content == Content::random) {
        while (left > 0) {
            std::uint64_t word = rng.next();
            for (int i = 0; i < 8 && left > 0; ++i, --left) {
                ++h[word & 0xff];
                word >>= 8;
            }
        }
        return h;
    }
    const SampleTable& table = content == Content::text ? text_table() : binary_table();
    while (left > 0) {
        std::uint64_t word = rng.next();
        for (int i = 0; i < 4 && left > 0; ++i, --left) {
            ++h[table[word & 0xffff]];
            word >>= 16;
        }
    }
    return h;
}

FileModel make_file(std::string path, Content content, std::uint64_t size, bool encrypted,
                    Rng& rng) {
    FileModel f;
    f.extension = extension_of(path);
    f.category = category_of(f.extension);
    f.path = std::move(path);
    f.byte_histogram = sample_content(content, size, rng);
    f.size_bytes = size;
    f.encrypted = encrypted;
    return f;
}

Content natural_content(std::string_view extension) {
    return category_of(extension) == FileCategory::text ? Content::text : Content::binary;
}

std::string numbered(std::string_view stem, std::uint32_t i, std::string_view ext) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05u", i);
    std::string s(stem);
    s += buf;
    if (!ext.empty()) {
        s += '.';
        s += ext;
    }
    return s;
}

struct Op {
    EventKind kind;
    std::string path;
};

class TraceBuilder {
public:
    TraceBuilder(const WorkloadSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

    Trace build() {
        switch (spec_.cls) {
            case WorkloadClass::ransomware:
                encrypt_files(ransomware_extensions()[rng_.below(ransomware_extensions().size())]);
                break;
            case WorkloadClass::benign_encrypt:
                encrypt_files("gpg");
                break;
            case WorkloadClass::modify:
                modify_files();
                break;
            case WorkloadClass::compress:
                compress_files();
                break;
            case WorkloadClass::decompress:
                decompress_files();
                break;
            case WorkloadClass::browse:
                browse();
                break;
            case WorkloadClass::idle:
                break;
        }
        assign_times();
        return std::move(trace_);
    }

private:
    void emit(EventKind kind, const std::string& path) { ops_.push_back({kind, path}); }

    std::string user_file(std::uint32_t i) {
        const auto ext = kUserExtensions[rng_.below(kUserExtensions.size())];
        return numbered("/home/user/docs/f", i, ext);
    }

    void add_initial(const std::string& path, Content content) {
        trace_.initial_files.push_back(make_file(path, content, spec_.file_size_bytes, false, rng_));
    }

    void add_created(const std::string& path, Content content, bool encrypted) {
        trace_.created_files.emplace(path,
                                     make_file(path, content, spec_.file_size_bytes, encrypted, rng_));
    }

    // open, create, open, read, write, close, close, delete
    void encrypt_files(std::string_view out_ext) {
        for (std::uint32_t i = 0; i < spec_.file_count; ++i) {
            const std::string orig = user_file(i);
            const std::string out = orig + "." + std::string(out_ext);
            add_initial(orig, natural_content(extension_of(orig)));
            add_created(out, Content::random, true);
            emit(EventKind::open, orig);
            emit(EventKind::create, out);
            emit(EventKind::open, out);
            emit(EventKind::read, orig);
            emit(EventKind::write, out);
            emit(EventKind::close, orig);
            emit(EventKind::close, out);
            emit(EventKind::remove, orig);
        }
    }

    // open, read, close, open, create, open, close, write, close
    void modify_files() {
        for (std::uint32_t i = 0; i < spec_.file_count; ++i) {
            const auto ext = kTextExtensions[rng_.below(kTextExtensions.size())];
            const std::string orig = numbered("/home/user/notes/n", i, ext);
            const std::string tmp = numbered("/home/user/notes/.n", i, ext);
            add_initial(orig, Content::text);
            add_created(tmp, Content::text, false);
            emit(EventKind::open, orig);
            emit(EventKind::read, orig);
            emit(EventKind::close, orig);
            emit(EventKind::open, orig);
            emit(EventKind::create, tmp);
            emit(EventKind::open, tmp);
            emit(EventKind::close, orig);
            emit(EventKind::write, tmp);
            emit(EventKind::close, tmp);
        }
    }

    // open, create, open, read, close, write, close
    void compress_files() {
        for (std::uint32_t i = 0; i < spec_.file_count; ++i) {
            const std::string orig = user_file(i);
            const std::string out = orig + ".gz";
            add_initial(orig, natural_content(extension_of(orig)));
            add_created(out, Content::random, false);
            emit(EventKind::open, orig);
            emit(EventKind::create, out);
            emit(EventKind::open, out);
            emit(EventKind::read, orig);
            emit(EventKind::close, orig);
            emit(EventKind::write, out);
            emit(EventKind::close, out);
        }
    }

    // open, read, close
    void decompress_files() {
        for (std::uint32_t i = 0; i < spec_.file_count; ++i) {
            const std::string archive = numbered("/home/user/downloads/a", i, "gz");
            add_initial(archive, Content::random);
            emit(EventKind::open, archive);
            emit(EventKind::read, archive);
            emit(EventKind::close, archive);
        }
    }

    // Blocks of {read*, write} (create, open, write, close, read x k, write) and
    // {read, write}* runs. Every block ends on a write, so a run never follows a
    // lone non-read/write event.
    void browse() {
        constexpr std::uint32_t kResources = 8;
        std::vector<std::string> resources;
        for (std::uint32_t r = 0; r < kResources; ++r) {
            resources.push_back(numbered("/home/user/.cache/web/r", r,
                                         r % 2 == 0 ? "html" : "css"));
            add_initial(resources.back(), Content::text);
        }
        auto any_resource = [&]() -> const std::string& { return resources[rng_.below(kResources)]; };
        for (std::uint32_t b = 0; b < spec_.file_count; ++b) {
            if (rng_.chance(0.5)) {
                const std::string entry = numbered("/home/user/.cache/web/e", b, "html");
                add_created(entry, Content::text, false);
                emit(EventKind::create, entry);
                emit(EventKind::open, entry);
                emit(EventKind::write, entry);
                emit(EventKind::close, entry);
                const auto reads = rng_.between(2, 4);
                for (std::int64_t k = 0; k < reads; ++k) emit(EventKind::read, any_resource());
                emit(EventKind::write, any_resource());
            } else {
                const auto pairs = rng_.between(1, 4);
                for (std::int64_t k = 0; k < pairs; ++k) {
                    emit(EventKind::read, any_resource());
                    emit(EventKind::write, any_resource());
                }
            }
        }
    }

    // Read/write events are evenly spaced so that count / (last - first) over the
    // whole trace equals ops_per_second; other events fill the gaps evenly.
    void assign_times() {
        std::size_t rw = 0;
        for (const Op& op : ops_) rw += is_read_write(op.kind) ? 1 : 0;
        if (ops_.empty()) return;
        const double rate = spec_.ops_per_second;
        const double step = rw >= 2 ? static_cast<double>(rw) / (static_cast<double>(rw - 1) * rate)
                                    : 1.0 / rate;

        trace_.events.reserve(ops_.size());
        std::size_t i = 0;
        SimTime anchor = spec_.start_time;
        bool seen_rw = false;
        while (i < ops_.size()) {
            std::size_t j = i;
            while (j < ops_.size() && !is_read_write(ops_[j].kind)) ++j;
            const std::size_t gap = j - i;
            if (!seen_rw) {
                // Leading non-read/write events occupy one step before the first read/write.
                for (std::size_t k = 0; k < gap; ++k) {
                    push(i + k, spec_.start_time + step * static_cast<double>(k) / static_cast<double>(gap));
                }
                anchor = spec_.start_time + (gap > 0 ? step : 0.0);
            } else {
                for (std::size_t k = 0; k < gap; ++k) {
                    push(i + k, anchor + step * static_cast<double>(k + 1) / static_cast<double>(gap + 1));
                }
                if (j < ops_.size()) anchor += step;
            }
            if (j < ops_.size()) {
                push(j, anchor);
                seen_rw = true;
                ++j;
            }
            i = j;
        }
    }

    void push(std::size_t op_index, SimTime t) {
        trace_.events.push_back({t, ops_[op_index].kind, std::move(ops_[op_index].path)});
    }

    WorkloadSpec spec_;
    Rng rng_;
    std::vector<Op> ops_;
    Trace trace_;
};

}  // namespace

std::string_view to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> parse_event_kind(std::string_view text) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i) {
        if (kEventNames[i] == text) return static_cast<EventKind>(i);
    }
    return std::nullopt;
}

std::string_view to_string(WorkloadClass cls) {
    return kWorkloadNames[static_cast<std::size_t>(cls)];
}

std::optional<WorkloadClass> parse_workload_class(std::string_view text) {
    for (std::size_t i = 0; i < kWorkloadNames.size(); ++i) {
        if (kWorkloadNames[i] == text) return static_cast<WorkloadClass>(i);
    }
    return std::nullopt;
}

double compute_entropy(const ByteHistogram& histogram) {
    std::uint64_t total = 0;
    for (std::uint64_t c : histogram) total += c;
    if (total == 0) {
        throw std::invalid_argument("empty file");
    }
    const double n = static_cast<double>(total);
    double acc = 0.0;
    for (std::uint64_t c : histogram) {
        if (c == 0) continue;
        const double freq = static_cast<double>(c) / n;
        acc += freq * std::log2(freq);
    }
    // acc is a sum of non-positive terms; clamp the -0.0 of a single symbol.
    return acc < 0.0 ? -acc : 0.0;
}

ByteHistogram byte_histogram(std::span<const std::uint8_t> bytes) {
    ByteHistogram h{};
    for (std::uint8_t b : bytes) ++h[b];
    return h;
}

ByteHistogram byte_histogram_parallel(std::span<const std::uint8_t> bytes) {
#ifdef _OPENMP
    ByteHistogram h{};
    const std::int64_t n = static_cast<std::int64_t>(bytes.size());
    const std::uint8_t* data = bytes.data();
#pragma omp parallel
    {
        ByteHistogram local{};
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) ++local[data[i]];
#pragma omp critical(naa_histogram_merge)
        for (std::size_t b = 0; b < 256; ++b) h[b] += local[b];
    }
    return h;
#else
    return byte_histogram(bytes);
#endif
}

std::string extension_of(std::string_view path) {
    const auto slash = path.find_last_of('/');
    const std::string_view name = slash == std::string_view::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot == std::string_view::npos || dot + 1 == name.size()) return {};
    std::string ext(name.substr(dot + 1));
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

const std::vector<std::string>& default_known_extensions() {
    static const std::vector<std::string> known = {"txt",  "log", "conf", "png", "jpeg",
                                                   "pptx", "mp3", "zip",  "gz",  "tar",
                                                   "pdf",  "html", "css", "php"};
    return known;
}

const std::vector<std::string>& ransomware_extensions() {
    static const std::vector<std::string> unknown = {"gnncry", "locked", "crypt", "cry"};
    return unknown;
}

FileCategory category_of(std::string_view extension) {
    for (auto text_ext : kTextExtensions) {
        if (text_ext == extension) return FileCategory::text;
    }
    return FileCategory::nontext;
}

void WorkloadSpec::validate() const {
    if (!std::isfinite(start_time) || start_time < 0.0) {
        throw std::invalid_argument("workload start_time must be finite and non-negative");
    }
    if (cls == WorkloadClass::idle) return;
    if (!(ops_per_second > 0.0) || !std::isfinite(ops_per_second)) {
        throw std::invalid_argument("workload ops_per_second must be positive");
    }
    if (file_count == 0) {
        throw std::invalid_argument("workload file_count must be positive");
    }
    if (file_size_bytes == 0) {
        throw std::invalid_argument("workload file_size_bytes must be positive");
    }
}

Trace gen_trace(const WorkloadSpec& spec, std::uint64_t rng_seed) {
    spec.validate();
    return TraceBuilder(spec, rng_seed).build();
}

std::optional<double> realized_rw_rate(std::span<const FsEvent> events) {
    std::size_t count = 0;
    SimTime first = 0.0;
    SimTime last = 0.0;
    for (const FsEvent& e : events) {
        if (!is_read_write(e.kind)) continue;
        if (count == 0) first = e.time;
        last = e.time;
        ++count;
    }
    if (count < 2 || !(last > first)) return std::nullopt;
    return static_cast<double>(count) / (last - first);
}

FileTable::FileTable(const std::vector<FileModel>& files) {
    for (const FileModel& f : files) files_.insert_or_assign(f.path, f);
}

void FileTable::put(FileModel file) {
    std::string key = file.path;
    files_.insert_or_assign(std::move(key), std::move(file));
}

void FileTable::erase(std::string_view path) {
    if (auto it = files_.find(path); it != files_.end()) files_.erase(it);
}

const FileModel* FileTable::find(std::string_view path) const {
    auto it = files_.find(path);
    return it == files_.end() ? nullptr : &it->second;
}

void FileTable::apply(const FsEvent& event, const Trace& trace) {
    if (event.kind == EventKind::create) {
        if (auto it = trace.created_files.find(event.path); it != trace.created_files.end()) {
            put(it->second);
        } else {
            FileModel empty;
            empty.path = event.path;
            empty.extension = extension_of(event.path);
            empty.category = category_of(empty.extension);
            put(std::move(empty));
        }
    } else if (event.kind == EventKind::remove) {
        erase(event.path);
    }
}

void write_trace(std::ostream& out, std::span<const FsEvent> events) {
    char buf[64];
    for (const FsEvent& e : events) {
        std::snprintf(buf, sizeof buf, "%.6f", e.time);
        out << buf << '\t' << to_string(e.kind) << '\t' << e.path << '\n';
    }
}

std::vector<FsEvent> read_trace(std::istream& in) {
    std::vector<FsEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": expected 3 fields");
        }
        const auto kind = parse_event_kind(std::string_view(line).substr(t1 + 1, t2 - t1 - 1));
        if (!kind) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": unknown event kind");
        }
        FsEvent e;
        e.time = std::stod(line.substr(0, t1));
        if (!std::isfinite(e.time) || e.time < 0.0) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": bad time");
        }
        e.kind = *kind;
        e.path = line.substr(t2 + 1);
        events.push_back(std::move(e));
    }
    return events;
}

}  // namespace naa
