#include "naa/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "naa/rng.hpp"

namespace naa {

ScenarioConfig SweepConfig::default_scenario() {
    ScenarioConfig s;
    s.workload.false_positives_per_100_safe = 3.0;
    return s;
}

void SweepConfig::validate() const {
    if (node_count == 0) throw ConfigError("sweep node count must be positive");
    if (repetitions == 0) throw ConfigError("sweep repetitions must be >= 1");
    for (std::uint32_t level : infected_levels) {
        if (level > node_count) {
            throw ConfigError("infected level " + std::to_string(level) + " exceeds node count " +
                              std::to_string(node_count));
        }
    }
    ScenarioConfig probe = scenario;
    probe.nodes = node_count;
    probe.infected = 0;
    probe.validate();
}

Confusion classify(const RunResult& run, Mechanism mechanism) {
    Confusion c;
    for (const NodeOutcome& n : run.nodes) {
        bool flagged = false;
        if (mechanism == Mechanism::dr) {
            flagged = n.first_anomalous.has_value();
        } else {
            flagged = n.acom_report && n.acom_report->verdict == AcomVerdict::alert;
        }
        if (n.infected) {
            (flagged ? c.tp : c.fn)++;
        } else {
            (flagged ? c.fp : c.tn)++;
        }
    }
    return c;
}

Metrics compute_metrics(const RunResult& run, Mechanism mechanism) {
    Metrics m;
    if (mechanism != Mechanism::bm) {
        const Confusion c = classify(run, mechanism);
        const double total = c.tp + c.fp + c.tn + c.fn;
        m.accuracy = total > 0 ? (c.tp + c.tn) / total : 1.0;
    }
    m.message_overhead = static_cast<double>(run.messages.size());

    double latency_sum = 0.0;
    std::uint32_t reported = 0;
    double loss_sum = 0.0;
    std::uint32_t infected = 0;
    for (const NodeOutcome& n : run.nodes) {
        if (n.infected) {
            loss_sum += n.first_suspended_at ? n.files_encrypted_before_suspension
                                             : n.files_encrypted_total;
            ++infected;
        }
        if (!n.escalated || mechanism == Mechanism::dr) continue;
        if (mechanism == Mechanism::bm) {
            if (!n.bm_report) continue;
            latency_sum += n.bm_reported_at - n.escalated_at;
        } else {
            if (!n.acom_report) continue;
            latency_sum += n.acom_reported_at - n.escalated_at;
        }
        ++reported;
    }
    m.latency_seconds = reported > 0 ? latency_sum / reported : 0.0;
    m.mean_files_encrypted = infected > 0 ? loss_sum / infected : 0.0;
    return m;
}

std::uint64_t run_seed(std::uint64_t base_seed, Mechanism mechanism, std::uint32_t infected,
                       std::uint32_t repetition) {
    return base_seed + mix_seed({stable_hash(to_string(mechanism)), infected, repetition});
}

RunSummary summarize_run(const RunResult& run, Mechanism mechanism, std::uint32_t repetition) {
    RunSummary s;
    s.mechanism = mechanism;
    s.infected = run.scenario.infected;
    s.repetition = repetition;
    s.seed = run.scenario.seed;
    s.metrics = compute_metrics(run, mechanism);
    s.messages = run.messages.size();
    s.max_ant_hops = run.max_ant_hops;
    bool first_infected = true;
    for (const NodeOutcome& n : run.nodes) {
        if (n.escalated) ++s.escalated;
        if (n.infected) {
            const std::uint32_t lost =
                n.first_suspended_at ? n.files_encrypted_before_suspension : n.files_encrypted_total;
            s.max_files_encrypted = std::max(s.max_files_encrypted, lost);
            s.min_files_encrypted = first_infected ? lost : std::min(s.min_files_encrypted, lost);
            first_infected = false;
        }
        for (SimTime t : n.encryption_times) {
            for (const auto& [from, to] : n.suspensions) {
                if (t > from && t < to) s.suspension_held = false;
            }
        }
    }
    return s;
}

namespace {

struct Job {
    Mechanism mechanism;
    std::uint32_t infected;
    std::uint32_t repetition;
};

std::vector<Job> plan(const SweepConfig& config) {
    std::vector<Job> jobs;
    for (Mechanism m : config.mechanisms) {
        for (std::uint32_t level : config.infected_levels) {
            for (std::uint32_t r = 0; r < config.repetitions; ++r) jobs.push_back({m, level, r});
        }
    }
    return jobs;
}

RunSummary execute(const SweepConfig& config, const Job& job) {
    ScenarioConfig s = config.scenario;
    s.nodes = config.node_count;
    s.infected = job.infected;
    s.mechanism = job.mechanism;
    s.seed = run_seed(config.base_seed, job.mechanism, job.infected, job.repetition);
    return summarize_run(run(s), job.mechanism, job.repetition);
}

SweepResult aggregate(const SweepConfig& config, std::vector<RunSummary> runs) {
    SweepResult out;
    const std::size_t reps = config.repetitions;
    for (std::size_t first = 0; first < runs.size(); first += reps) {
        CellResult cell;
        cell.mechanism = runs[first].mechanism;
        cell.infected = runs[first].infected;
        double acc = 0.0;
        bool has_acc = false;
        for (std::size_t i = first; i < first + reps; ++i) {
            const Metrics& m = runs[i].metrics;
            if (m.accuracy) {
                acc += *m.accuracy;
                has_acc = true;
            }
            cell.mean.message_overhead += m.message_overhead;
            cell.mean.latency_seconds += m.latency_seconds;
            cell.mean.mean_files_encrypted += m.mean_files_encrypted;
        }
        const double n = static_cast<double>(reps);
        if (has_acc) cell.mean.accuracy = acc / n;
        cell.mean.message_overhead /= n;
        cell.mean.latency_seconds /= n;
        cell.mean.mean_files_encrypted /= n;
        out.cells.push_back(cell);
    }
    out.runs = std::move(runs);
    return out;
}

}  // namespace

SweepResult run_sweep_serial(const SweepConfig& config) {
    config.validate();
    const std::vector<Job> jobs = plan(config);
    std::vector<RunSummary> runs;
    runs.reserve(jobs.size());
    for (const Job& job : jobs) runs.push_back(execute(config, job));
    return aggregate(config, std::move(runs));
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<Job> jobs = plan(config);
    std::vector<RunSummary> runs(jobs.size());
    const auto count = static_cast<std::int64_t>(jobs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            runs[static_cast<std::size_t>(i)] = execute(config, jobs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(naa_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return aggregate(config, std::move(runs));
}

namespace {

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string format_csv(const std::vector<CellResult>& cells) {
    std::string csv = "mechanism,infected,accuracy,overhead,latency,loss\n";
    for (const CellResult& c : cells) {
        csv += to_string(c.mechanism);
        csv += ',' + std::to_string(c.infected) + ',';
        if (c.mean.accuracy) csv += fmt6(*c.mean.accuracy);
        csv += ',' + fmt6(c.mean.message_overhead) + ',' + fmt6(c.mean.latency_seconds) + ',' +
               fmt6(c.mean.mean_files_encrypted) + '\n';
    }
    return csv;
}

void emit_csv(const std::vector<CellResult>& cells, const std::filesystem::path& path) {
    write_file(path, format_csv(cells));
}

void emit_plotdata(const std::vector<CellResult>& cells, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    std::map<std::string, std::string> series;
    for (const CellResult& c : cells) {
        const std::string mech(to_string(c.mechanism));
        const std::string x = std::to_string(c.infected) + ' ';
        if (c.mean.accuracy) series["accuracy_" + mech] += x + fmt6(*c.mean.accuracy) + '\n';
        series["overhead_" + mech] += x + fmt6(c.mean.message_overhead) + '\n';
        series["latency_" + mech] += x + fmt6(c.mean.latency_seconds) + '\n';
        series["loss_" + mech] += x + fmt6(c.mean.mean_files_encrypted) + '\n';
    }
    for (const auto& [name, text] : series) write_file(dir / (name + ".dat"), text);
}

}  // namespace naa
