// naa_sim: run one infected level or the full sweep and write results.csv plus plot data.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naa/harness.hpp"

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

// Re-runs repetition 0 of each cell and dumps its per-node traces, verdicts and messages.
void export_cells(const naa::SweepConfig& sweep, const fs::path& out_dir, bool traces, bool messages) {
    for (naa::Mechanism mech : sweep.mechanisms) {
        for (std::uint32_t level : sweep.infected_levels) {
            naa::ScenarioConfig s = sweep.scenario;
            s.nodes = sweep.node_count;
            s.infected = level;
            s.mechanism = mech;
            s.seed = naa::run_seed(sweep.base_seed, mech, level, 0);
            const std::string cell = std::string(naa::to_string(mech)) + "_" + std::to_string(level);

            const naa::RunResult result = naa::run(s);
            if (messages) {
                make_dir(out_dir / "messages");
                auto out = open_out(out_dir / "messages" / (cell + ".tsv"));
                naa::write_message_log(out, result.messages);
            }
            if (!traces) continue;

            const fs::path dir = out_dir / "traces" / cell;
            make_dir(dir);
            const std::vector<naa::HostPlan> plans = naa::plan_hosts(s);
            for (std::size_t id = 0; id < plans.size(); ++id) {
                const naa::Trace trace = naa::gen_trace(plans[id].workload, plans[id].trace_seed);
                auto out = open_out(dir / ("node_" + std::to_string(id) + ".trace"));
                naa::write_trace(out, trace.events);
            }
            auto verdicts = open_out(dir / "verdicts.tsv");
            for (const naa::NodeOutcome& n : result.nodes) {
                for (const naa::DetectionVerdict& v : n.verdicts) naa::write_verdict_line(verdicts, n.id, v);
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate local and network-assisted ransomware detection over a host population"};

    std::uint32_t nodes = 100;
    std::uint32_t infected = 0;
    bool sweep_all = false;
    std::string mechanism = "all";
    std::uint32_t runs = 10;
    std::uint64_t seed = 2020;
    std::uint32_t threshold_t = 0;
    std::uint32_t limit_n = 0;
    std::string out_dir = "naa_out";
    std::string scenario_file;
    bool export_traces = false;
    bool export_messages = false;

    app.add_option("--nodes", nodes, "Number of hosts")->check(CLI::PositiveNumber);
    auto* single = app.add_option("--infected", infected, "Run a single infected level");
    auto* sweep_flag = app.add_flag("--sweep", sweep_all, "Run levels 0,10,...,nodes");
    single->excludes(sweep_flag);
    app.add_option("--mechanism", mechanism, "dr|acom|bm|all")
        ->check(CLI::IsMember({"dr", "acom", "bm", "all"}));
    app.add_option("--runs", runs, "Repetitions per cell")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Base seed");
    app.add_option("--threshold-t", threshold_t, "ACOM goal T");
    app.add_option("--limit-n", limit_n, "ACOM hop limit N");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--scenario", scenario_file, "key = value scenario file");
    app.add_flag("--export-traces", export_traces, "Write per-node traces and verdicts of repetition 0");
    app.add_flag("--export-messages", export_messages, "Write message logs of repetition 0");

    CLI11_PARSE(app, argc, argv);

    try {
        naa::SweepConfig sweep;
        if (!scenario_file.empty()) {
            sweep.scenario = naa::load_scenario(scenario_file, naa::SweepConfig::default_scenario());
            if (app.count("--nodes") == 0) nodes = sweep.scenario.nodes;
        }
        if (threshold_t > 0) sweep.scenario.acom.threshold_t = threshold_t;
        if (limit_n > 0) sweep.scenario.acom.limit_n = limit_n;
        sweep.node_count = nodes;
        sweep.repetitions = runs;
        sweep.base_seed = seed;
        if (mechanism == "all") {
            sweep.mechanisms = {naa::Mechanism::dr, naa::Mechanism::acom, naa::Mechanism::bm};
        } else {
            sweep.mechanisms = {*naa::parse_mechanism(mechanism)};
        }
        if (*single) {
            sweep.infected_levels = {infected};
        } else if (sweep_all || scenario_file.empty()) {
            sweep.infected_levels.clear();
            for (std::uint32_t level = 0; level <= nodes; level += std::max<std::uint32_t>(1, nodes / 10)) {
                sweep.infected_levels.push_back(level);
            }
        } else {
            sweep.infected_levels = {sweep.scenario.infected};
        }

        const naa::SweepResult result = naa::run_sweep(sweep);
        const fs::path out(out_dir);
        make_dir(out);
        naa::emit_csv(result.cells, out / "results.csv");
        naa::emit_plotdata(result.cells, out / "plot");
        if (export_traces || export_messages) export_cells(sweep, out, export_traces, export_messages);
        std::cout << naa::format_csv(result.cells);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "naa_sim: %s\n", e.what());
        return 1;
    }
    return 0;
}
