#pragma once

// File-system event model: events, files, byte entropy and synthetic workloads.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace naa {

/// Simulated time in seconds.
using SimTime = double;

enum class EventKind : std::uint8_t { open, create, read, write, close, remove };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

inline bool is_read_write(EventKind kind) {
    return kind == EventKind::read || kind == EventKind::write;
}

struct FsEvent {
    SimTime time = 0.0;
    EventKind kind = EventKind::open;
    std::string path;

    friend bool operator==(const FsEvent&, const FsEvent&) = default;
};

using ByteHistogram = std::array<std::uint64_t, 256>;

/// Shannon entropy in bits per byte of a byte-value histogram.
/// Throws std::invalid_argument("empty file") when every count is zero.
double compute_entropy(const ByteHistogram& histogram);

/// Histogram of a byte buffer; serial reference.
ByteHistogram byte_histogram(std::span<const std::uint8_t> bytes);
/// Same result as byte_histogram, split across OpenMP threads when available.
ByteHistogram byte_histogram_parallel(std::span<const std::uint8_t> bytes);

enum class FileCategory : std::uint8_t { text, nontext };

struct FileModel {
    std::string path;
    std::string extension;
    FileCategory category = FileCategory::text;
    ByteHistogram byte_histogram{};
    std::uint64_t size_bytes = 0;
    bool encrypted = false;
};

/// Lower-case extension after the last dot of the final path component, or "".
std::string extension_of(std::string_view path);

/// Extensions the entropy stage recognizes.
const std::vector<std::string>& default_known_extensions();
/// Extensions never in the known set; used for ransomware output.
const std::vector<std::string>& ransomware_extensions();
FileCategory category_of(std::string_view extension);

enum class WorkloadClass : std::uint8_t {
    ransomware,
    modify,
    compress,
    decompress,
    browse,
    benign_encrypt,
    idle,
};

std::string_view to_string(WorkloadClass cls);
std::optional<WorkloadClass> parse_workload_class(std::string_view text);

struct WorkloadSpec {
    WorkloadClass cls = WorkloadClass::idle;
    double ops_per_second = 1.0;
    std::uint32_t file_count = 1;
    std::uint64_t file_size_bytes = 1024;
    SimTime start_time = 0.0;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;
};

struct Trace {
    std::vector<FsEvent> events;
    /// Files present before the first event.
    std::vector<FileModel> initial_files;
    /// Content of every file the trace creates, keyed by path.
    std::map<std::string, FileModel, std::less<>> created_files;
};

Trace gen_trace(const WorkloadSpec& spec, std::uint64_t rng_seed);

/// Read/write events per second over the span of the first to last read/write.
std::optional<double> realized_rw_rate(std::span<const FsEvent> events);

/// Mutable view of a node's files; replays create/delete effects of a trace.
class FileTable {
public:
    FileTable() = default;
    explicit FileTable(const std::vector<FileModel>& files);

    void put(FileModel file);
    void erase(std::string_view path);
    const FileModel* find(std::string_view path) const;
    std::size_t size() const { return files_.size(); }

    /// Applies the file effect of one event of `trace` (create inserts, delete removes).
    void apply(const FsEvent& event, const Trace& trace);

private:
    std::map<std::string, FileModel, std::less<>> files_;
};

/// One event per line: `<time>\t<kind>\t<path>`, times with 6 decimals.
void write_trace(std::ostream& out, std::span<const FsEvent> events);
std::vector<FsEvent> read_trace(std::istream& in);

}  // namespace naa
