#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "naa/harness.hpp"

using namespace naa;

namespace {

SweepConfig small_sweep() {
    SweepConfig c;
    c.node_count = 30;
    c.infected_levels = {0, 3, 15, 30};
    c.repetitions = 2;
    return c;
}

NodeOutcome node(bool infected, bool local_anomalous) {
    NodeOutcome n;
    n.infected = infected;
    if (local_anomalous) n.first_anomalous = DetectionVerdict{VerdictState::anomalous};
    return n;
}

}  // namespace

TEST_CASE("accuracy formula") {
    RunResult r;
    r.nodes.push_back(node(true, true));
    r.nodes.push_back(node(false, true));
    r.nodes.push_back(node(false, false));
    r.nodes.push_back(node(true, false));
    const Confusion c = classify(r, Mechanism::dr);
    CHECK(c.tp == 1);
    CHECK(c.fp == 1);
    CHECK(c.tn == 1);
    CHECK(c.fn == 1);
    CHECK(*compute_metrics(r, Mechanism::dr).accuracy == 0.5);
    CHECK_FALSE(compute_metrics(r, Mechanism::bm).accuracy);
}

TEST_CASE("acom classification follows the final report") {
    RunResult r;
    NodeOutcome fp = node(false, true);
    fp.escalated = true;
    fp.acom_report = AcomReport{AcomVerdict::low_risk};
    NodeOutcome tp = node(true, true);
    tp.escalated = true;
    tp.escalated_at = 1.0;
    tp.acom_report = AcomReport{AcomVerdict::alert};
    tp.acom_reported_at = 4.0;
    fp.escalated_at = 2.0;
    fp.acom_reported_at = 3.0;
    r.nodes = {fp, tp, node(false, false)};
    const Metrics m = compute_metrics(r, Mechanism::acom);
    CHECK(*m.accuracy == 1.0);
    CHECK(m.latency_seconds == doctest::Approx(2.0));
    CHECK(compute_metrics(r, Mechanism::dr).latency_seconds == 0.0);
}

TEST_CASE("seeds are stable per cell") {
    CHECK(run_seed(1, Mechanism::dr, 10, 0) == run_seed(1, Mechanism::dr, 10, 0));
    CHECK(run_seed(1, Mechanism::dr, 10, 0) != run_seed(1, Mechanism::acom, 10, 0));
    CHECK(run_seed(1, Mechanism::dr, 10, 0) != run_seed(1, Mechanism::dr, 10, 1));
    CHECK(run_seed(2, Mechanism::dr, 10, 0) - run_seed(1, Mechanism::dr, 10, 0) == 1);
}

TEST_CASE("sweep config validation") {
    SweepConfig c;
    c.infected_levels = {101};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SweepConfig{};
    c.repetitions = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("parallel sweep equals the serial reference") {
    const SweepConfig c = small_sweep();
    const SweepResult a = run_sweep(c);
    const SweepResult b = run_sweep_serial(c);
    CHECK(a.runs.size() == 3 * 4 * 2);
    CHECK(format_csv(a.cells) == format_csv(b.cells));
}

TEST_CASE("adding a mechanism leaves other cells untouched") {
    SweepConfig one = small_sweep();
    one.mechanisms = {Mechanism::acom};
    SweepConfig three = small_sweep();
    const SweepResult a = run_sweep(one);
    const SweepResult b = run_sweep(three);
    const std::string acom_rows = format_csv(a.cells).substr(format_csv({}).size());
    CHECK(format_csv(b.cells).find(acom_rows) != std::string::npos);
}

TEST_CASE("csv layout") {
    CHECK(format_csv({}) == "mechanism,infected,accuracy,overhead,latency,loss\n");
    CellResult dr{Mechanism::dr, 10, Metrics{0.97, 0, 0, 49}};
    CellResult bm{Mechanism::bm, 10, Metrics{std::nullopt, 1287, 2, 49}};
    CHECK(format_csv({dr, bm}) ==
          "mechanism,infected,accuracy,overhead,latency,loss\n"
          "dr,10,0.970000,0.000000,0.000000,49.000000\n"
          "bm,10,,1287.000000,2.000000,49.000000\n");
}

TEST_CASE("sweep at full infection: BM reports 100%") {
    SweepConfig c = small_sweep();
    c.infected_levels = {30};
    c.repetitions = 1;
    c.mechanisms = {Mechanism::bm};
    ScenarioConfig s = c.scenario;
    s.nodes = 30;
    s.infected = 30;
    s.mechanism = Mechanism::bm;
    const RunResult r = run(s);
    for (const auto& n : r.nodes) {
        REQUIRE(n.bm_report);
        CHECK(n.bm_report->message_text.rfind("100% machines in LAN", 0) == 0);
    }
    CHECK(compute_metrics(r, Mechanism::bm).message_overhead == 30 * 29);
}

TEST_CASE("files on disk") {
    const auto dir = std::filesystem::temp_directory_path() / "naa_harness_test";
    std::filesystem::remove_all(dir);
    const SweepResult r = run_sweep(small_sweep());
    emit_csv(r.cells, dir.string() + "_results.csv");
    emit_plotdata(r.cells, dir);
    std::ifstream csv(dir.string() + "_results.csv");
    std::stringstream text;
    text << csv.rdbuf();
    CHECK(text.str() == format_csv(r.cells));
    CHECK(std::filesystem::exists(dir / "accuracy_acom.dat"));
    CHECK(std::filesystem::exists(dir / "overhead_bm.dat"));
    CHECK_FALSE(std::filesystem::exists(dir / "accuracy_bm.dat"));
    CHECK_THROWS_AS(emit_csv(r.cells, "/nonexistent/dir/results.csv"), std::runtime_error);
}
