#pragma once

// Ant-colony network-level detection: ants walk the WAN collecting anomalous
// machines, leaving evaporating pheromone counts on the hosts they pass.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "naa/fsmodel.hpp"
#include "naa/rng.hpp"

namespace naa {

using NodeId = std::uint32_t;
using NodeSet = std::set<NodeId>;

struct AcomConfig {
    int threshold_t = 3;
    int limit_n = 20;
    double evaporation_hold_seconds = 10.0;
    double evaporation_rate = 0.9;
    /// A host's last local verdict is reused by visiting ants for this long.
    double verdict_staleness = 30.0;

    void validate() const;
};

/// Pheromone left after `age_seconds`: unchanged during the hold period, then
/// floor(rate^(age - hold) * p).
int evaporate(int p, double age_seconds, double hold_seconds = 10.0, double rate = 0.9);

struct PheromoneRecord {
    int count = 0;
    SimTime deposited_at = 0.0;
    NodeSet known_anomalous;
};

/// The ACOM-relevant slice of a host.
struct AcomHost {
    NodeId id = 0;
    std::vector<NodeId> peers;
    std::optional<PheromoneRecord> pheromone;
    NodeSet known_anomalous;

    int effective_pheromone(SimTime now, const AcomConfig& config) const;
};

struct Ant {
    std::uint64_t serial = 0;
    NodeId home = 0;
    int goal = 0;
    int hop_limit = 20;
    std::vector<NodeId> visited;
    NodeSet collected;
    /// Size of `collected` at creation (ids inherited from the home's pheromone).
    std::size_t inherited = 0;
    SimTime created_at = 0.0;

    /// Anomalous machines this ant witnessed itself.
    int found() const { return static_cast<int>(collected.size() - inherited); }
};

enum class AcomVerdict : std::uint8_t { alert, low_risk };
std::string_view to_string(AcomVerdict verdict);

struct AcomReport {
    AcomVerdict verdict = AcomVerdict::low_risk;
    /// Anomalous machines witnessed by the ant toward its goal.
    int anomalous_found = 0;
    int inquired = 0;
    std::string message_text;
};

std::string alert_text(int threshold_t);
std::string low_risk_text(int inquired, int anomalous);

/// Creates the ant for an anomalous host, or an immediate alert when the host's
/// pheromone already meets the threshold. Throws std::logic_error for a safe host.
std::variant<Ant, AcomReport> create_ant(const AcomHost& host, bool host_anomalous,
                                         const AcomConfig& config, SimTime now,
                                         std::uint64_t serial = 0);

/// Uniform choice among the host's peers for the first hop.
std::optional<NodeId> first_hop(const AcomHost& host, Rng& rng);

/// Ant deposits its findings on the host and learns the host's verdict.
void exchange_information(Ant& ant, AcomHost& host, bool host_anomalous, SimTime now,
                          const AcomConfig& config);

/// Weight of peer `peer` for an ant at `host`: 0 visited or home, 2 known
/// anomalous, 1 otherwise.
int direction_weight(const AcomHost& host, const Ant& ant, NodeId peer);

std::optional<NodeId> decide_direction(const AcomHost& host, const Ant& ant, Rng& rng);

struct Continue {
    NodeId next = 0;
};
struct ReturnHome {
    AcomReport report;
};
using StepOutcome = std::variant<Continue, ReturnHome>;

/// One iteration of the travel loop, run right after exchange_information.
StepOutcome acom_step(const Ant& ant, const AcomHost& host, const AcomConfig& config, Rng& rng);

}  // namespace naa
