#include "naa/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace naa {

std::optional<std::string> observe_event(PatternState& state, const FsEvent& event) {
    if (is_read_write(event.kind)) {
        state.time_list.push_back(event.time);
    }
    if (event.kind != EventKind::write) {
        state.event_list.push_back(event.kind);
        return std::nullopt;
    }
    const auto& list = state.event_list;
    std::optional<std::string> match;
    if (list.size() >= 2) {
        const EventKind last = list[list.size() - 1];
        const EventKind before = list[list.size() - 2];
        if (last == EventKind::read && !is_read_write(before)) {
            match = event.path;
        }
    }
    state.event_list.clear();
    return match;
}

bool EntropyThresholds::knows(std::string_view extension) const {
    return std::find(known_extensions.begin(), known_extensions.end(), extension) !=
           known_extensions.end();
}

void EntropyThresholds::validate() const {
    if (!(0.0 < text_threshold && text_threshold < nontext_threshold && nontext_threshold <= 8.0)) {
        throw std::invalid_argument("entropy thresholds must satisfy 0 < text < nontext <= 8");
    }
}

EntropyCheck check_entropy(const FileModel* file, const EntropyThresholds& thresholds) {
    if (file == nullptr) {
        return {true, std::nullopt};
    }
    if (!thresholds.knows(file->extension)) {
        return {true, std::nullopt};
    }
    double value = 0.0;
    try {
        value = compute_entropy(file->byte_histogram);
    } catch (const std::invalid_argument&) {
        // Nothing written yet: no evidence of encryption.
        return {false, std::nullopt};
    }
    const double threshold = file->category == FileCategory::text ? thresholds.text_threshold
                                                                   : thresholds.nontext_threshold;
    return {value >= threshold, value};
}

void FrequencyConfig::validate() const {
    if (!(threshold_ops_per_sec > 0.0)) {
        throw std::invalid_argument("frequency threshold must be positive");
    }
    if (min_ops < 2) {
        throw std::invalid_argument("frequency min_ops must be at least 2");
    }
    if (!(max_wait_seconds > 0.0)) {
        throw std::invalid_argument("frequency max_wait_seconds must be positive");
    }
}

std::optional<double> compute_frequency(std::span<const SimTime> time_list) {
    if (time_list.size() < 2) return std::nullopt;
    const double duration = time_list.back() - time_list.front();
    if (!(duration > 0.0)) return std::nullopt;
    return static_cast<double>(time_list.size()) / duration;
}

std::string_view to_string(VerdictState state) {
    return state == VerdictState::anomalous ? "anomalous" : "safe";
}

void DetectorConfig::validate() const {
    entropy.validate();
    frequency.validate();
}

LocalDetector::LocalDetector(DetectorConfig config) : config_(std::move(config)) {
    config_.validate();
}

std::optional<SimTime> LocalDetector::deadline() const {
    if (!diagnosis_) return std::nullopt;
    return diagnosis_->started_at + config_.frequency.max_wait_seconds;
}

std::optional<DetectionVerdict> LocalDetector::observe(const FsEvent& event,
                                                       const FileLookup& files) {
    if (diagnosis_ && event.time > *deadline()) {
        throw std::logic_error("LocalDetector::observe past an open diagnosis deadline");
    }
    auto match = observe_event(pattern_, event);

    if (diagnosis_) {
        if (pattern_.time_list.size() >= config_.frequency.min_ops) {
            return finish(event.time);
        }
        return std::nullopt;
    }

    if (!match) {
        // Idle: only the newest stamp can become the matched read later.
        if (pattern_.time_list.size() > 1) {
            pattern_.time_list.erase(pattern_.time_list.begin(), pattern_.time_list.end() - 1);
        }
        return std::nullopt;
    }

    // Frequency covers the matched read and everything after it.
    pattern_.time_list.erase(pattern_.time_list.begin(), pattern_.time_list.end() - 2);

    const EntropyCheck entropy = check_entropy(files ? files(*match) : nullptr, config_.entropy);
    if (!entropy.hit) {
        DetectionVerdict v;
        v.pattern_hit = true;
        v.entropy_hit = false;
        v.entropy_value = entropy.value;
        v.trigger_path = std::move(*match);
        v.decided_at = event.time;
        pattern_.time_list.clear();
        return v;
    }
    diagnosis_ = Diagnosis{std::move(*match), entropy.value, event.time};
    if (pattern_.time_list.size() >= config_.frequency.min_ops) {
        return finish(event.time);
    }
    return std::nullopt;
}

std::optional<DetectionVerdict> LocalDetector::expire(SimTime now) {
    if (!diagnosis_ || now < *deadline()) return std::nullopt;
    return finish(*deadline());
}

DetectionVerdict LocalDetector::finish(SimTime decided_at) {
    DetectionVerdict v;
    v.pattern_hit = true;
    v.entropy_hit = true;
    v.entropy_value = diagnosis_->entropy_value;
    v.trigger_path = std::move(diagnosis_->trigger_path);
    v.decided_at = decided_at;
    v.frequency_value = compute_frequency(pattern_.time_list);
    v.frequency_hit =
        v.frequency_value.has_value() && *v.frequency_value >= config_.frequency.threshold_ops_per_sec;
    v.state = *v.frequency_hit ? VerdictState::anomalous : VerdictState::safe;
    diagnosis_.reset();
    pattern_.time_list.clear();
    return v;
}

namespace {

template <class Lookup, class Apply>
DetectionVerdict run_pipeline(std::span<const FsEvent> events, const DetectorConfig& config,
                              Lookup&& lookup, Apply&& apply) {
    LocalDetector detector(config);
    std::optional<DetectionVerdict> last_safe;
    auto consider = [&](std::optional<DetectionVerdict> v) -> bool {
        if (!v) return false;
        if (v->anomalous()) return true;
        last_safe = std::move(v);
        return false;
    };
    const LocalDetector::FileLookup files = lookup;
    for (const FsEvent& e : events) {
        if (auto d = detector.deadline(); d && e.time > *d) {
            auto v = detector.expire(e.time);
            if (v->anomalous()) return *v;
            consider(std::move(v));
        }
        apply(e);
        auto v = detector.observe(e, files);
        if (v && v->anomalous()) return *v;
        consider(std::move(v));
    }
    if (auto d = detector.deadline()) {
        auto v = detector.expire(*d);
        if (v->anomalous()) return *v;
        consider(std::move(v));
    }
    if (last_safe) return *last_safe;
    DetectionVerdict initial;
    initial.decided_at = events.empty() ? 0.0 : events.back().time;
    return initial;
}

}  // namespace

DetectionVerdict local_detect(const Trace& trace, const DetectorConfig& config) {
    FileTable table(trace.initial_files);
    return run_pipeline(
        trace.events, config, [&table](std::string_view p) { return table.find(p); },
        [&](const FsEvent& e) { table.apply(e, trace); });
}

DetectionVerdict local_detect(std::span<const FsEvent> events, const FileTable& files,
                              const DetectorConfig& config) {
    return run_pipeline(
        events, config, [&files](std::string_view p) { return files.find(p); },
        [](const FsEvent&) {});
}

namespace {

std::string stage_field(const std::optional<bool>& hit, const std::optional<double>& value) {
    if (!hit) return "-";
    std::string s = *hit ? "1" : "0";
    if (value) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "@%.6f", *value);
        s += buf;
    }
    return s;
}

}  // namespace

void write_verdict_line(std::ostream& out, std::uint32_t node_id, const DetectionVerdict& v) {
    char time_buf[48];
    std::snprintf(time_buf, sizeof time_buf, "%.6f", v.decided_at);
    out << node_id << '\t' << time_buf << '\t' << to_string(v.state) << '\t'
        << (v.pattern_hit ? "1" : "0") << '\t' << stage_field(v.entropy_hit, v.entropy_value) << '\t'
        << stage_field(v.frequency_hit, v.frequency_value) << '\n';
}

}  // namespace naa
