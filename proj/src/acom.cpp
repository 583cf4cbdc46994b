#include "naa/acom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace naa {

void AcomConfig::validate() const {
    if (threshold_t < 1) throw std::invalid_argument("acom.threshold_T must be >= 1");
    if (limit_n < 1) throw std::invalid_argument("acom.limit_N must be >= 1");
    if (!(evaporation_hold_seconds >= 0.0)) {
        throw std::invalid_argument("acom.evaporation_hold_seconds must be >= 0");
    }
    if (!(evaporation_rate > 0.0 && evaporation_rate <= 1.0)) {
        throw std::invalid_argument("acom.evaporation_rate must be in (0, 1]");
    }
    if (!(verdict_staleness >= 0.0)) {
        throw std::invalid_argument("acom.verdict_staleness must be >= 0");
    }
}

int evaporate(int p, double age_seconds, double hold_seconds, double rate) {
    if (p <= 0) return 0;
    if (age_seconds < hold_seconds) return p;
    const double value = std::pow(rate, age_seconds - hold_seconds) * static_cast<double>(p);
    // Products that are mathematically integral can land one ulp low.
    const int floored = static_cast<int>(std::floor(value + 1e-9));
    return std::clamp(floored, 0, p);
}

int AcomHost::effective_pheromone(SimTime now, const AcomConfig& config) const {
    if (!pheromone) return 0;
    return evaporate(pheromone->count, now - pheromone->deposited_at,
                     config.evaporation_hold_seconds, config.evaporation_rate);
}

std::string_view to_string(AcomVerdict verdict) {
    return verdict == AcomVerdict::alert ? "alert" : "low_risk";
}

std::string alert_text(int threshold_t) {
    return "At least " + std::to_string(threshold_t) + " users in WAN think you are in high risk";
}

std::string low_risk_text(int inquired, int anomalous) {
    return "We inquired " + std::to_string(inquired) + " users in WAN, only " +
           std::to_string(anomalous) + " user(s) think(s) your are in risk.";
}

std::variant<Ant, AcomReport> create_ant(const AcomHost& host, bool host_anomalous,
                                         const AcomConfig& config, SimTime now,
                                         std::uint64_t serial) {
    if (!host_anomalous) {
        throw std::logic_error("create_ant called on a safe host");
    }
    const int known = host.effective_pheromone(now, config);
    const int goal = std::max(0, config.threshold_t - known);
    if (goal == 0) {
        return AcomReport{AcomVerdict::alert, 0, 0, alert_text(config.threshold_t)};
    }
    Ant ant;
    ant.serial = serial;
    ant.home = host.id;
    ant.goal = goal;
    ant.hop_limit = config.limit_n;
    ant.collected = host.known_anomalous;
    ant.collected.erase(host.id);
    ant.inherited = ant.collected.size();
    ant.created_at = now;
    return ant;
}

std::optional<NodeId> first_hop(const AcomHost& host, Rng& rng) {
    if (host.peers.empty()) return std::nullopt;
    return host.peers[rng.below(host.peers.size())];
}

void exchange_information(Ant& ant, AcomHost& host, bool host_anomalous, SimTime now,
                          const AcomConfig& config) {
    const int carried = static_cast<int>(ant.collected.size());
    if (carried > host.effective_pheromone(now, config)) {
        PheromoneRecord record{carried, now, ant.collected};
        record.known_anomalous.insert(host.known_anomalous.begin(), host.known_anomalous.end());
        host.pheromone = std::move(record);
    }
    host.known_anomalous.insert(ant.collected.begin(), ant.collected.end());
    if (host_anomalous && host.id != ant.home) {
        ant.collected.insert(host.id);
    }
    ant.visited.push_back(host.id);
}

int direction_weight(const AcomHost& host, const Ant& ant, NodeId peer) {
    if (peer == ant.home || peer == host.id) return 0;
    if (std::find(ant.visited.begin(), ant.visited.end(), peer) != ant.visited.end()) return 0;
    if (host.known_anomalous.contains(peer) || ant.collected.contains(peer)) return 2;
    return 1;
}

std::optional<NodeId> decide_direction(const AcomHost& host, const Ant& ant, Rng& rng) {
    std::uint64_t total = 0;
    std::vector<int> weights(host.peers.size());
    for (std::size_t i = 0; i < host.peers.size(); ++i) {
        weights[i] = direction_weight(host, ant, host.peers[i]);
        total += static_cast<std::uint64_t>(weights[i]);
    }
    if (total == 0) return std::nullopt;
    std::uint64_t pick = rng.below(total);
    for (std::size_t i = 0; i < host.peers.size(); ++i) {
        const auto w = static_cast<std::uint64_t>(weights[i]);
        if (pick < w) return host.peers[i];
        pick -= w;
    }
    return std::nullopt;  // unreachable
}

StepOutcome acom_step(const Ant& ant, const AcomHost& host, const AcomConfig& config, Rng& rng) {
    const int inquired = static_cast<int>(ant.visited.size());
    if (ant.found() >= ant.goal) {
        return ReturnHome{{AcomVerdict::alert, ant.found(), inquired, alert_text(config.threshold_t)}};
    }
    const auto low_risk = [&] {
        return ReturnHome{{AcomVerdict::low_risk, ant.found(), inquired,
                           low_risk_text(ant.hop_limit, static_cast<int>(ant.collected.size()))}};
    };
    if (inquired >= ant.hop_limit) {
        return low_risk();
    }
    if (auto next = decide_direction(host, ant, rng)) {
        return Continue{*next};
    }
    return low_risk();
}

}  // namespace naa
