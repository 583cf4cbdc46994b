#pragma once

// Deterministic discrete-event simulation of a population of hosts running local
// detection, suspension, user prompts and the network-level mechanisms.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "naa/acom.hpp"
#include "naa/bm.hpp"
#include "naa/detector.hpp"
#include "naa/fsmodel.hpp"

namespace naa {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mechanism : std::uint8_t { dr, acom, bm, all };
enum class TopologyMode : std::uint8_t { complete, random_k };
enum class UserPolicy : std::uint8_t { always_escalate, ground_truth, legitimate_ack };
enum class UserResponse : std::uint8_t { legitimate, escalate };
enum class MessageKind : std::uint8_t { ant_transfer, ant_return, bm_announce };

std::string_view to_string(Mechanism m);
std::string_view to_string(TopologyMode m);
std::string_view to_string(UserPolicy p);
std::string_view to_string(MessageKind k);
std::optional<Mechanism> parse_mechanism(std::string_view text);
std::optional<TopologyMode> parse_topology(std::string_view text);
std::optional<UserPolicy> parse_user_policy(std::string_view text);

inline bool runs_acom(Mechanism m) { return m == Mechanism::acom || m == Mechanism::all; }
inline bool runs_bm(Mechanism m) { return m == Mechanism::bm || m == Mechanism::all; }

struct WorkloadMix {
    double ransomware_rate = 742.0;
    std::uint32_t ransomware_files = 100;
    std::uint64_t file_size_bytes = 1024;
    /// Infected hosts start encrypting at a uniform offset in [0, jitter].
    double infection_jitter = 0.5;
    double benign_min_rate = 35.0;
    double benign_max_rate = 342.0;
    std::uint32_t benign_min_files = 10;
    std::uint32_t benign_max_files = 40;
    /// Hosts running authorized encryption, per 100 clean hosts (rounded).
    double false_positives_per_100_safe = 0.0;
    /// Authorized encryption starts uniformly in [0, this]; negative means half the horizon.
    double false_positive_start_max = -1.0;
};

struct ScenarioConfig {
    std::uint32_t nodes = 100;
    std::uint32_t infected = 0;
    Mechanism mechanism = Mechanism::dr;
    TopologyMode topology = TopologyMode::complete;
    std::uint32_t random_k = 8;
    std::uint64_t seed = 1;
    double horizon_seconds = 120.0;
    double per_hop_delay = 0.010;
    UserPolicy user_policy = UserPolicy::always_escalate;
    WorkloadMix workload;
    DetectorConfig detector;
    AcomConfig acom;
    double bm_window_seconds = 2.0;

    /// Throws ConfigError.
    void validate() const;
    /// Sets one `key = value` entry; throws ConfigError on unknown keys or bad values.
    void set(std::string_view key, std::string_view value);
};

/// Flat `key = value` text; `#` starts a comment.
ScenarioConfig parse_scenario(std::istream& in, ScenarioConfig base = {});
ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base = {});

struct Topology {
    TopologyMode mode = TopologyMode::complete;
    std::vector<std::vector<NodeId>> reachability;

    static Topology build(std::uint32_t nodes, TopologyMode mode, std::uint32_t k, std::uint64_t seed);
};

struct MessageRecord {
    SimTime send_time = 0.0;
    SimTime deliver_time = 0.0;
    MessageKind kind = MessageKind::ant_transfer;
    NodeId src = 0;
    NodeId dst = 0;
};

struct NodeOutcome {
    NodeId id = 0;
    bool infected = false;
    WorkloadClass workload = WorkloadClass::idle;
    /// Every local decision, in order, including safe results of ant-requested passes.
    std::vector<DetectionVerdict> verdicts;
    std::optional<DetectionVerdict> first_anomalous;
    bool escalated = false;
    SimTime escalated_at = 0.0;
    std::optional<AcomReport> acom_report;
    SimTime acom_reported_at = 0.0;
    std::optional<BmReport> bm_report;
    SimTime bm_reported_at = 0.0;
    std::optional<SimTime> first_suspended_at;
    std::uint32_t files_encrypted_before_suspension = 0;
    std::uint32_t files_encrypted_total = 0;
    /// Completion times of every fully encrypted file.
    std::vector<SimTime> encryption_times;
    /// [start, end) of each suspension; an open interval ends at +inf.
    std::vector<std::pair<SimTime, SimTime>> suspensions;
};

struct RunResult {
    ScenarioConfig scenario;
    std::vector<NodeOutcome> nodes;
    std::vector<MessageRecord> messages;
    std::uint64_t ants_created = 0;
    std::uint32_t max_ant_hops = 0;
    std::uint64_t events_processed = 0;
};

struct HostPlan {
    bool infected = false;
    WorkloadSpec workload;
    std::uint64_t trace_seed = 0;
};

/// Ground truth and workload of every host, as the simulator will set them up.
std::vector<HostPlan> plan_hosts(const ScenarioConfig& scenario);

UserResponse user_prompt(UserPolicy policy, bool ground_truth_infected, WorkloadClass workload);

/// Runs one scenario to quiescence or the horizon.
RunResult run(const ScenarioConfig& scenario);

/// `<send_time>\t<deliver_time>\t<kind>\t<src>\t<dst>`, one line per message.
void write_message_log(std::ostream& out, const std::vector<MessageRecord>& messages);

}  // namespace naa
