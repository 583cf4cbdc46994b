#pragma once

// Scenario sweeps over infected-host counts and mechanisms, with the accuracy,
// message overhead, latency and loss metrics computed per run and per cell.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "naa/netsim.hpp"

namespace naa {

struct SweepConfig {
    std::uint32_t node_count = 100;
    std::vector<std::uint32_t> infected_levels = {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    std::uint32_t repetitions = 10;
    std::vector<Mechanism> mechanisms = {Mechanism::dr, Mechanism::acom, Mechanism::bm};
    std::uint64_t base_seed = 2020;
    /// Everything else about a run; nodes, infected, mechanism and seed are overwritten.
    ScenarioConfig scenario = default_scenario();

    static ScenarioConfig default_scenario();
    /// Throws ConfigError.
    void validate() const;
};

struct Metrics {
    /// Absent for BM, which reports an observation rather than a verdict.
    std::optional<double> accuracy;
    double message_overhead = 0.0;
    double latency_seconds = 0.0;
    double mean_files_encrypted = 0.0;
};

struct Confusion {
    std::uint32_t tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Per-node classification: DR by the local verdict, ACOM (and `all`) by an alert report.
Confusion classify(const RunResult& run, Mechanism mechanism);

Metrics compute_metrics(const RunResult& run, Mechanism mechanism);

struct RunSummary {
    Mechanism mechanism = Mechanism::dr;
    std::uint32_t infected = 0;
    std::uint32_t repetition = 0;
    std::uint64_t seed = 0;
    Metrics metrics;
    std::uint64_t messages = 0;
    /// Hosts that escalated to the network level.
    std::uint32_t escalated = 0;
    std::uint32_t max_ant_hops = 0;
    std::uint32_t max_files_encrypted = 0;
    std::uint32_t min_files_encrypted = 0;
    /// No file finished encrypting while its host was suspended.
    bool suspension_held = true;
};

struct CellResult {
    Mechanism mechanism = Mechanism::dr;
    std::uint32_t infected = 0;
    Metrics mean;
};

struct SweepResult {
    std::vector<CellResult> cells;
    std::vector<RunSummary> runs;
};

/// Seed for one (mechanism, level, repetition) run; independent of the other cells.
std::uint64_t run_seed(std::uint64_t base_seed, Mechanism mechanism, std::uint32_t infected,
                       std::uint32_t repetition);

RunSummary summarize_run(const RunResult& run, Mechanism mechanism, std::uint32_t repetition);

/// Runs are spread over OpenMP threads when available.
SweepResult run_sweep(const SweepConfig& config);
/// Single-threaded reference; produces the same SweepResult as run_sweep.
SweepResult run_sweep_serial(const SweepConfig& config);

/// Header `mechanism,infected,accuracy,overhead,latency,loss`; one row per cell.
std::string format_csv(const std::vector<CellResult>& cells);
void emit_csv(const std::vector<CellResult>& cells, const std::filesystem::path& path);

/// Writes `<metric>_<mechanism>.dat` files (`infected value` per line) into `dir`.
void emit_plotdata(const std::vector<CellResult>& cells, const std::filesystem::path& dir);

}  // namespace naa
