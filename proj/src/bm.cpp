#include "naa/bm.hpp"

#include <cmath>
#include <stdexcept>

namespace naa {

void BmState::receive(NodeId sender) {
    if (lan_peers.contains(sender)) received_anomalous.insert(sender);
}

std::vector<BmAnnouncement> bm_broadcast(NodeId self, const BmState& state, bool self_anomalous,
                                         SimTime now) {
    if (!self_anomalous) {
        throw std::logic_error("bm_broadcast called on a safe host");
    }
    std::vector<BmAnnouncement> out;
    out.reserve(state.lan_peers.size());
    for (NodeId peer : state.lan_peers) {
        out.push_back({self, peer, now});
    }
    return out;
}

std::string bm_text(long percent) {
    return std::to_string(percent) +
           "% machines in LAN also experience anomalies, so your computer is in high risk of "
           "cryptoworm attack.";
}

BmReport bm_report(const BmState& state, bool self_anomalous, std::size_t lan_size, SimTime now) {
    if (lan_size == 0) {
        throw std::invalid_argument("bm_report: LAN size must be positive");
    }
    if (now < state.window_start + state.window_seconds) {
        throw std::logic_error("bm_report: aggregation window has not elapsed");
    }
    const std::size_t anomalous = state.received_anomalous.size() + (self_anomalous ? 1 : 0);
    BmReport r;
    r.fraction = static_cast<double>(anomalous) / static_cast<double>(lan_size);
    r.percent = std::lround(r.fraction * 100.0);
    r.message_text = bm_text(r.percent);
    return r;
}

}  // namespace naa
