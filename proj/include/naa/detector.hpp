#pragma once

// Local detection: read/write pattern automaton, entropy check, frequency check.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "naa/fsmodel.hpp"

namespace naa {

struct PatternState {
    std::vector<EventKind> event_list;
    std::vector<SimTime> time_list;
};

/// Feeds one event to the pattern automaton. On a write whose two predecessors
/// since the last reset are {non-read/write, read}, returns the write's path.
/// Every write resets event_list; time_list keeps all read/write timestamps.
std::optional<std::string> observe_event(PatternState& state, const FsEvent& event);

struct EntropyThresholds {
    double text_threshold = 6.00;
    double nontext_threshold = 7.99;
    std::vector<std::string> known_extensions = default_known_extensions();

    bool knows(std::string_view extension) const;
    void validate() const;
};

struct EntropyCheck {
    bool hit = false;
    /// Absent when the verdict did not need an entropy value (unknown extension,
    /// missing or empty file).
    std::optional<double> value;
};

/// `file == nullptr` means the file no longer exists; that counts as a hit.
EntropyCheck check_entropy(const FileModel* file, const EntropyThresholds& thresholds);

struct FrequencyConfig {
    double threshold_ops_per_sec = 500.0;
    std::uint32_t min_ops = 100;
    double max_wait_seconds = 1.0;

    void validate() const;
};

/// count / (last - first); nullopt with fewer than two stamps or zero duration.
std::optional<double> compute_frequency(std::span<const SimTime> time_list);

enum class VerdictState : std::uint8_t { safe, anomalous };
std::string_view to_string(VerdictState state);

struct DetectionVerdict {
    VerdictState state = VerdictState::safe;
    bool pattern_hit = false;
    std::optional<double> entropy_value;
    std::optional<bool> entropy_hit;
    std::optional<double> frequency_value;
    std::optional<bool> frequency_hit;
    std::optional<std::string> trigger_path;
    SimTime decided_at = 0.0;

    bool anomalous() const { return state == VerdictState::anomalous; }
};

struct DetectorConfig {
    EntropyThresholds entropy;
    FrequencyConfig frequency;

    void validate() const;
};

/// Streaming form of the three-stage pipeline for one host.
///
/// A pattern hit starts a diagnosis: the entropy stage runs at once on the written
/// file; if it hits, read/write stamps from the matched read onward are collected
/// until min_ops arrive or max_wait_seconds pass. Pattern matches seen while a
/// diagnosis is open are ignored.
class LocalDetector {
public:
    using FileLookup = std::function<const FileModel*(std::string_view)>;

    explicit LocalDetector(DetectorConfig config = {});

    /// Processes one event. Returns a verdict when a diagnosis finishes on it.
    /// Precondition: no open diagnosis has a deadline before event.time (call
    /// expire first); violating it throws std::logic_error.
    std::optional<DetectionVerdict> observe(const FsEvent& event, const FileLookup& files);

    /// Closes an open diagnosis whose observation window ended at or before `now`.
    std::optional<DetectionVerdict> expire(SimTime now);

    bool diagnosing() const { return diagnosis_.has_value(); }
    std::optional<SimTime> deadline() const;
    const PatternState& pattern() const { return pattern_; }
    const DetectorConfig& config() const { return config_; }

private:
    struct Diagnosis {
        std::string trigger_path;
        std::optional<double> entropy_value;
        SimTime started_at = 0.0;
    };

    DetectionVerdict finish(SimTime decided_at);

    DetectorConfig config_;
    PatternState pattern_;
    std::optional<Diagnosis> diagnosis_;
};

/// Runs the pipeline over a whole trace, replaying its file effects.
/// Returns the first anomalous verdict, else the last safe decision, else the
/// initial safe state stamped at the last event time.
DetectionVerdict local_detect(const Trace& trace, const DetectorConfig& config = {});

/// Same, over a bare event stream and a fixed file table.
DetectionVerdict local_detect(std::span<const FsEvent> events, const FileTable& files,
                              const DetectorConfig& config = {});

/// `<node_id>\t<decided_at>\t<state>\t<pattern>\t<entropy>\t<frequency>`; stage
/// fields are `-` when the stage did not run, else 0/1 with `@value` when measured.
void write_verdict_line(std::ostream& out, std::uint32_t node_id, const DetectionVerdict& v);

}  // namespace naa
