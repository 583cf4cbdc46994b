#include <doctest.h>

#include <stdexcept>

#include "naa/bm.hpp"

using namespace naa;

namespace {

BmState lan(NodeId self, NodeId size) {
    BmState s;
    for (NodeId i = 0; i < size; ++i) {
        if (i != self) s.lan_peers.insert(i);
    }
    return s;
}

}  // namespace

TEST_CASE("broadcast reaches every LAN peer once") {
    const BmState s = lan(3, 100);
    const auto out = bm_broadcast(3, s, true, 1.5);
    CHECK(out.size() == 99);
    NodeSet seen;
    for (const auto& a : out) {
        CHECK(a.src == 3);
        CHECK(a.dst != 3);
        CHECK(a.sent_at == 1.5);
        seen.insert(a.dst);
    }
    CHECK(seen.size() == 99);
    CHECK_THROWS_AS(bm_broadcast(3, s, false, 0.0), std::logic_error);
}

TEST_CASE("receive ignores duplicates and strangers") {
    BmState s = lan(0, 4);
    s.receive(1);
    s.receive(1);
    s.receive(99);
    s.receive(0);
    CHECK(s.received_anomalous == NodeSet{1});
}

TEST_CASE("report counts the reporting node") {
    BmState s = lan(0, 100);
    for (NodeId i = 1; i <= 9; ++i) s.receive(i);
    const BmReport r = bm_report(s, true, 100, 2.0);
    CHECK(r.fraction == doctest::Approx(0.10));
    CHECK(r.percent == 10);
    CHECK(r.message_text ==
          "10% machines in LAN also experience anomalies, so your computer is in high risk of cryptoworm "
          "attack.");
}

TEST_CASE("whole LAN anomalous gives 100%") {
    BmState s = lan(0, 100);
    for (NodeId i = 1; i < 100; ++i) s.receive(i);
    CHECK(bm_report(s, true, 100, 5.0).percent == 100);
}

TEST_CASE("percent rounds half away from zero") {
    BmState s = lan(0, 8);
    CHECK(bm_report(s, true, 8, 2.0).percent == 13);  // 12.5
}

TEST_CASE("report errors") {
    BmState s = lan(0, 3);
    s.window_start = 1.0;
    CHECK_THROWS_AS(bm_report(s, true, 0, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(bm_report(s, true, 3, 2.5), std::logic_error);
    CHECK_NOTHROW(bm_report(s, true, 3, 3.0));
}
