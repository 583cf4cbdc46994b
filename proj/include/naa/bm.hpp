#pragma once

// Broadcasting mechanism for a LAN: anomalous hosts announce themselves to every
// peer and report the share of the LAN that is anomalous.

#include <cstddef>
#include <string>
#include <vector>

#include "naa/acom.hpp"

namespace naa {

struct BmState {
    NodeSet lan_peers;
    NodeSet received_anomalous;
    SimTime window_start = 0.0;
    double window_seconds = 2.0;

    /// Records an announcement; senders outside the LAN and duplicates are ignored.
    void receive(NodeId sender);
};

struct BmAnnouncement {
    NodeId src = 0;
    NodeId dst = 0;
    SimTime sent_at = 0.0;
};

/// One announcement per LAN peer. Throws std::logic_error for a safe host.
std::vector<BmAnnouncement> bm_broadcast(NodeId self, const BmState& state, bool self_anomalous,
                                         SimTime now);

struct BmReport {
    double fraction = 0.0;
    long percent = 0;
    std::string message_text;
};

std::string bm_text(long percent);

/// Throws std::invalid_argument for lan_size == 0 and std::logic_error when the
/// aggregation window has not elapsed at `now`.
BmReport bm_report(const BmState& state, bool self_anomalous, std::size_t lan_size, SimTime now);

}  // namespace naa
