#include "naa/netsim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <unordered_map>
#include <variant>

#include "naa/rng.hpp"

namespace naa {

namespace {

constexpr std::array<std::string_view, 4> kMechanismNames = {"dr", "acom", "bm", "all"};
constexpr std::array<std::string_view, 2> kTopologyNames = {"complete", "random_k"};
constexpr std::array<std::string_view, 3> kPolicyNames = {"always_escalate", "ground_truth",
                                                          "legitimate_ack"};
constexpr std::array<std::string_view, 3> kMessageNames = {"ant_transfer", "ant_return",
                                                           "bm_announce"};

template <class E, std::size_t N>
std::optional<E> parse_enum(const std::array<std::string_view, N>& names, std::string_view text) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) return static_cast<E>(i);
    }
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
        throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(value) + "'");
    }
    return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(value) + "'");
    }
    return out;
}

std::uint32_t to_u32(std::string_view key, std::string_view value) {
    const auto v = to_uint(key, value);
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("value out of range for " + std::string(key));
    }
    return static_cast<std::uint32_t>(v);
}

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string_view to_string(Mechanism m) { return kMechanismNames[static_cast<std::size_t>(m)]; }
std::string_view to_string(TopologyMode m) { return kTopologyNames[static_cast<std::size_t>(m)]; }
std::string_view to_string(UserPolicy p) { return kPolicyNames[static_cast<std::size_t>(p)]; }
std::string_view to_string(MessageKind k) { return kMessageNames[static_cast<std::size_t>(k)]; }

std::optional<Mechanism> parse_mechanism(std::string_view text) {
    return parse_enum<Mechanism>(kMechanismNames, text);
}
std::optional<TopologyMode> parse_topology(std::string_view text) {
    return parse_enum<TopologyMode>(kTopologyNames, text);
}
std::optional<UserPolicy> parse_user_policy(std::string_view text) {
    return parse_enum<UserPolicy>(kPolicyNames, text);
}

void ScenarioConfig::validate() const {
    if (nodes == 0) throw ConfigError("nodes must be positive");
    if (infected > nodes) throw ConfigError("infected exceeds nodes");
    if (!(horizon_seconds > 0.0)) throw ConfigError("horizon_seconds must be positive");
    if (!(per_hop_delay > 0.0)) throw ConfigError("net.per_hop_delay must be positive");
    if (!(bm_window_seconds > 0.0)) throw ConfigError("bm.window_seconds must be positive");
    if (topology == TopologyMode::random_k && random_k == 0) {
        throw ConfigError("topology.k must be positive");
    }
    if (!(workload.ransomware_rate > 0.0)) throw ConfigError("workload.ransomware_rate must be positive");
    if (workload.ransomware_files == 0) throw ConfigError("workload.ransomware_files must be positive");
    if (workload.file_size_bytes == 0) throw ConfigError("workload.file_size_bytes must be positive");
    if (!(workload.infection_jitter >= 0.0)) throw ConfigError("workload.infection_jitter must be >= 0");
    if (!(workload.benign_min_rate > 0.0 && workload.benign_min_rate <= workload.benign_max_rate)) {
        throw ConfigError("workload benign rates must satisfy 0 < min <= max");
    }
    if (workload.benign_min_files == 0 || workload.benign_min_files > workload.benign_max_files) {
        throw ConfigError("workload benign file counts must satisfy 0 < min <= max");
    }
    if (!(workload.false_positives_per_100_safe >= 0.0)) {
        throw ConfigError("fp.per_100_safe must be >= 0");
    }
    try {
        detector.validate();
        acom.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void ScenarioConfig::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "nodes") {
        nodes = to_u32(key, value);
    } else if (key == "infected") {
        infected = to_u32(key, value);
    } else if (key == "mechanism") {
        auto m = parse_mechanism(value);
        if (!m) throw ConfigError("mechanism must be dr|acom|bm|all, got '" + std::string(value) + "'");
        mechanism = *m;
    } else if (key == "topology") {
        auto t = parse_topology(value);
        if (!t) throw ConfigError("topology must be complete|random_k, got '" + std::string(value) + "'");
        topology = *t;
    } else if (key == "topology.k") {
        random_k = to_u32(key, value);
    } else if (key == "seed") {
        seed = to_uint(key, value);
    } else if (key == "horizon_seconds") {
        horizon_seconds = to_double(key, value);
    } else if (key == "user_policy") {
        auto p = parse_user_policy(value);
        if (!p) throw ConfigError("unknown user_policy '" + std::string(value) + "'");
        user_policy = *p;
    } else if (key == "net.per_hop_delay") {
        per_hop_delay = to_double(key, value);
    } else if (key == "fp.per_100_safe") {
        workload.false_positives_per_100_safe = to_double(key, value);
    } else if (key == "fp.start_max_seconds") {
        workload.false_positive_start_max = to_double(key, value);
    } else if (key == "workload.ransomware_rate") {
        workload.ransomware_rate = to_double(key, value);
    } else if (key == "workload.ransomware_files") {
        workload.ransomware_files = to_u32(key, value);
    } else if (key == "workload.file_size_bytes") {
        workload.file_size_bytes = to_uint(key, value);
    } else if (key == "workload.infection_jitter") {
        workload.infection_jitter = to_double(key, value);
    } else if (key == "workload.benign_min_rate") {
        workload.benign_min_rate = to_double(key, value);
    } else if (key == "workload.benign_max_rate") {
        workload.benign_max_rate = to_double(key, value);
    } else if (key == "acom.threshold_T") {
        acom.threshold_t = static_cast<int>(to_u32(key, value));
    } else if (key == "acom.limit_N") {
        acom.limit_n = static_cast<int>(to_u32(key, value));
    } else if (key == "acom.evaporation_hold_seconds") {
        acom.evaporation_hold_seconds = to_double(key, value);
    } else if (key == "acom.evaporation_rate") {
        acom.evaporation_rate = to_double(key, value);
    } else if (key == "acom.verdict_staleness") {
        acom.verdict_staleness = to_double(key, value);
    } else if (key == "bm.window_seconds") {
        bm_window_seconds = to_double(key, value);
    } else if (key == "detector.text_threshold") {
        detector.entropy.text_threshold = to_double(key, value);
    } else if (key == "detector.nontext_threshold") {
        detector.entropy.nontext_threshold = to_double(key, value);
    } else if (key == "detector.frequency_threshold") {
        detector.frequency.threshold_ops_per_sec = to_double(key, value);
    } else if (key == "detector.min_ops") {
        detector.frequency.min_ops = to_u32(key, value);
    } else if (key == "detector.max_wait_seconds") {
        detector.frequency.max_wait_seconds = to_double(key, value);
    } else {
        throw ConfigError("unknown scenario key '" + std::string(key) + "'");
    }
}

ScenarioConfig parse_scenario(std::istream& in, ScenarioConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("scenario line " + std::to_string(line_no) + ": expected key = value");
        }
        base.set(trim(view.substr(0, eq)), view.substr(eq + 1));
    }
    return base;
}

ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file " + path);
    return parse_scenario(in, std::move(base));
}

Topology Topology::build(std::uint32_t nodes, TopologyMode mode, std::uint32_t k,
                         std::uint64_t seed) {
    Topology t;
    t.mode = mode;
    t.reachability.assign(nodes, {});
    if (mode == TopologyMode::complete) {
        for (NodeId a = 0; a < nodes; ++a) {
            t.reachability[a].reserve(nodes > 0 ? nodes - 1 : 0);
            for (NodeId b = 0; b < nodes; ++b) {
                if (a != b) t.reachability[a].push_back(b);
            }
        }
        return t;
    }
    std::vector<NodeSet> sets(nodes);
    Rng rng(mix_seed({seed, 0x70b0}));
    const std::uint32_t want = std::min<std::uint32_t>(k, nodes > 0 ? nodes - 1 : 0);
    for (NodeId a = 0; a < nodes; ++a) {
        while (sets[a].size() < want) {
            const auto b = static_cast<NodeId>(rng.below(nodes));
            if (b == a) continue;
            sets[a].insert(b);
            sets[b].insert(a);
        }
    }
    for (NodeId a = 0; a < nodes; ++a) {
        t.reachability[a].assign(sets[a].begin(), sets[a].end());
    }
    return t;
}

namespace {

WorkloadSpec pick_workload(const ScenarioConfig& cfg, Rng& rng, bool infected, bool false_positive,
                       double fp_start_max) {
const WorkloadMix& mix = cfg.workload;
    WorkloadSpec s;
    s.file_size_bytes = mix.file_size_bytes;
    if (infected || false_positive) {
        s.cls = infected ? WorkloadClass::ransomware : WorkloadClass::benign_encrypt;
        s.ops_per_second = mix.ransomware_rate;
        s.file_count = mix.ransomware_files;
        s.start_time = infected ? rng.uniform(0.0, mix.infection_jitter)
                                : rng.uniform(0.0, fp_start_max);
        return s;
    }
    constexpr WorkloadClass kBenign[] = {WorkloadClass::modify, WorkloadClass::compress,
                                         WorkloadClass::decompress, WorkloadClass::browse,
                                         WorkloadClass::idle};
    s.cls = kBenign[rng.below(std::size(kBenign))];
    s.ops_per_second = rng.uniform(mix.benign_min_rate, mix.benign_max_rate);
    s.file_count = static_cast<std::uint32_t>(rng.between(mix.benign_min_files, mix.benign_max_files));
    s.start_time = rng.uniform(0.0, cfg.horizon_seconds / 2.0);
    return s;
}

}  // namespace

std::vector<HostPlan> plan_hosts(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::uint32_t n = cfg.nodes;
    Rng assign(mix_seed({cfg.seed, 0xa551}));
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[assign.below(i)]);
    }
    std::vector<bool> infected(n, false);
    for (std::uint32_t i = 0; i < cfg.infected; ++i) infected[order[i]] = true;
    const std::uint32_t clean = n - cfg.infected;
    const auto fp_count = std::min<std::uint32_t>(
        clean, static_cast<std::uint32_t>(
                   std::llround(cfg.workload.false_positives_per_100_safe * clean / 100.0)));
    std::vector<bool> false_positive(n, false);
    for (std::uint32_t i = 0; i < fp_count; ++i) false_positive[order[cfg.infected + i]] = true;

    const double fp_start_max = cfg.workload.false_positive_start_max >= 0.0
                                    ? cfg.workload.false_positive_start_max
                                    : cfg.horizon_seconds / 2.0;
    std::vector<HostPlan> plans(n);
    for (NodeId id = 0; id < n; ++id) {
        Rng wl(mix_seed({cfg.seed, id, 1}));
        plans[id].infected = infected[id];
        plans[id].workload = pick_workload(cfg, wl, infected[id], false_positive[id], fp_start_max);
        plans[id].trace_seed = wl.next();
    }
    return plans;
}

UserResponse user_prompt(UserPolicy policy, bool ground_truth_infected, WorkloadClass workload) {
    switch (policy) {
        case UserPolicy::always_escalate:
            return UserResponse::escalate;
        case UserPolicy::ground_truth:
            return ground_truth_infected ? UserResponse::escalate : UserResponse::legitimate;
        case UserPolicy::legitimate_ack:
            return workload == WorkloadClass::benign_encrypt ? UserResponse::legitimate
                                                             : UserResponse::escalate;
    }
    return UserResponse::escalate;
}

void write_message_log(std::ostream& out, const std::vector<MessageRecord>& messages) {
    for (const MessageRecord& m : messages) {
        out << fmt6(m.send_time) << '\t' << fmt6(m.deliver_time) << '\t' << to_string(m.kind) << '\t'
            << m.src << '\t' << m.dst << '\n';
    }
}

namespace {

struct WorkloadStep {
    NodeId node;
};
struct DiagnosisDeadline {
    NodeId node;
    std::uint64_t generation;
};
struct PassDeadline {
    NodeId node;
    std::uint64_t generation;
};
struct Delivery {
    std::size_t message;
};
struct BmWindowEnd {
    NodeId node;
};
using Payload = std::variant<WorkloadStep, DiagnosisDeadline, PassDeadline, Delivery, BmWindowEnd>;

struct Scheduled {
    SimTime time;
    std::uint64_t seq;
    Payload payload;
};

struct Later {
    bool operator()(const Scheduled& a, const Scheduled& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct InFlight {
    MessageKind kind;
    NodeId src;
    NodeId dst;
    std::optional<Ant> ant;
    std::optional<AcomReport> report;
};

struct Host {
    NodeId id = 0;
    bool infected = false;
    WorkloadSpec spec;
    Trace trace;
    std::size_t cursor = 0;
    double time_shift = 0.0;
    bool step_queued = false;

    std::unordered_map<std::string_view, const FileModel*> files;

    LocalDetector detector;
    std::uint64_t diagnosis_generation = 0;
    std::optional<DetectionVerdict> last_verdict;

    bool suspended = false;
    SimTime suspended_since = 0.0;

    AcomHost acom;
    BmState bm;
    Rng rng{0};

    bool pass_open = false;
    std::uint64_t pass_generation = 0;
    std::vector<Ant> waiting_ants;

    NodeOutcome outcome;
};

class Simulator {
public:
    explicit Simulator(const ScenarioConfig& cfg) : cfg_(cfg) {
        cfg_.validate();
        result_.scenario = cfg_;
        build_hosts();
    }

    RunResult run() {
        for (Host& h : hosts_) schedule_next_step(h);
        while (!queue_.empty()) {
            Scheduled item = queue_.top();
            queue_.pop();
            if (item.time > cfg_.horizon_seconds) break;
            now_ = item.time;
            ++result_.events_processed;
            std::visit([this](auto& p) { handle(p); }, item.payload);
        }
        result_.nodes.reserve(hosts_.size());
        for (Host& h : hosts_) {
            if (h.suspended) h.outcome.suspensions.emplace_back(h.suspended_since,
                                                                std::numeric_limits<double>::infinity());
            result_.nodes.push_back(std::move(h.outcome));
        }
        return std::move(result_);
    }

private:
    void build_hosts() {
        const std::uint32_t n = cfg_.nodes;
        const Topology topo = Topology::build(n, cfg_.topology, cfg_.random_k, cfg_.seed);
        if (runs_acom(cfg_.mechanism)) {
            for (NodeId a = 0; a < n; ++a) {
                if (topo.reachability[a].empty()) {
                    throw ConfigError("node " + std::to_string(a) +
                                      " has no reachable peer for ant dispatch");
                }
            }
        }

        const std::vector<HostPlan> plans = plan_hosts(cfg_);

        hosts_.resize(n);
        for (NodeId id = 0; id < n; ++id) {
            Host& h = hosts_[id];
            h.id = id;
            h.infected = plans[id].infected;
            h.detector = LocalDetector(cfg_.detector);
            h.rng = Rng(mix_seed({cfg_.seed, id, 2}));
            h.spec = plans[id].workload;
            h.trace = gen_trace(h.spec, plans[id].trace_seed);
            for (const FileModel& f : h.trace.initial_files) h.files[f.path] = &f;

            h.acom.id = id;
            h.acom.peers = topo.reachability[id];
            for (NodeId b = 0; b < n; ++b) {
                if (b != id) h.bm.lan_peers.insert(b);
            }
            h.bm.window_seconds = cfg_.bm_window_seconds;

            h.outcome.id = id;
            h.outcome.infected = h.infected;
            h.outcome.workload = h.spec.cls;
        }
    }

    void push(SimTime t, Payload p) { queue_.push({t, seq_++, std::move(p)}); }

    void schedule_next_step(Host& h) {
        if (h.suspended || h.step_queued || h.cursor >= h.trace.events.size()) return;
        h.step_queued = true;
        push(h.trace.events[h.cursor].time + h.time_shift, WorkloadStep{h.id});
    }

    void handle(const WorkloadStep& s) {
        Host& h = hosts_[s.node];
        h.step_queued = false;
        if (h.suspended) return;
        FsEvent event = h.trace.events[h.cursor++];
        event.time = now_;
        apply_file_effect(h, event);

        const bool was_diagnosing = h.detector.diagnosing();
        auto verdict = h.detector.observe(event, [&h](std::string_view path) -> const FileModel* {
            auto it = h.files.find(path);
            return it == h.files.end() ? nullptr : it->second;
        });
        if (!was_diagnosing && h.detector.diagnosing()) {
            push(*h.detector.deadline(), DiagnosisDeadline{h.id, ++h.diagnosis_generation});
        }
        schedule_next_step(h);
        if (verdict) on_verdict(h, std::move(*verdict));
    }

    void apply_file_effect(Host& h, const FsEvent& e) {
        if (e.kind == EventKind::create) {
            if (auto it = h.trace.created_files.find(e.path); it != h.trace.created_files.end()) {
                h.files[it->second.path] = &it->second;
            }
        } else if (e.kind == EventKind::remove) {
            h.files.erase(e.path);
            const bool encrypting = h.spec.cls == WorkloadClass::ransomware ||
                                    h.spec.cls == WorkloadClass::benign_encrypt;
            if (encrypting) {
                ++h.outcome.files_encrypted_total;
                h.outcome.encryption_times.push_back(now_);
            }
        }
    }

    void handle(const DiagnosisDeadline& d) {
        Host& h = hosts_[d.node];
        if (d.generation != h.diagnosis_generation) return;
        if (auto v = h.detector.expire(now_)) on_verdict(h, std::move(*v));
    }

    void handle(const PassDeadline& d) {
        Host& h = hosts_[d.node];
        if (!h.pass_open || d.generation != h.pass_generation) return;
        if (h.detector.diagnosing()) return;  // the open diagnosis will answer
        DetectionVerdict v;
        v.decided_at = now_;
        record_verdict(h, v);
        release_ants(h, false);
    }

    void handle(const Delivery& d) {
        InFlight& m = in_flight_[d.message];
        Host& dst = hosts_[m.dst];
        switch (m.kind) {
            case MessageKind::ant_transfer:
                arrive(dst, std::move(*m.ant));
                break;
            case MessageKind::ant_return:
                ant_home(dst, std::move(*m.ant), std::move(*m.report));
                break;
            case MessageKind::bm_announce:
                dst.bm.receive(m.src);
                break;
        }
        m.ant.reset();
        m.report.reset();
    }

    void handle(const BmWindowEnd& e) {
        Host& h = hosts_[e.node];
        h.outcome.bm_report = bm_report(h.bm, true, cfg_.nodes, now_);
        h.outcome.bm_reported_at = now_;
    }

    void record_verdict(Host& h, const DetectionVerdict& v) {
        h.last_verdict = v;
        h.outcome.verdicts.push_back(v);
        h.pass_open = false;
    }

    void on_verdict(Host& h, DetectionVerdict v) {
        record_verdict(h, v);
        release_ants(h, v.anomalous());
        if (!v.anomalous()) return;
        if (!h.outcome.first_anomalous) h.outcome.first_anomalous = v;
        if (!h.suspended) suspend(h);
        if (h.outcome.escalated) return;
        if (user_prompt(cfg_.user_policy, h.infected, h.spec.cls) == UserResponse::legitimate) {
            resume(h);
            return;
        }
        escalate(h);
    }

    void suspend(Host& h) {
        h.suspended = true;
        h.suspended_since = now_;
        if (!h.outcome.first_suspended_at) {
            h.outcome.first_suspended_at = now_;
            h.outcome.files_encrypted_before_suspension = h.outcome.files_encrypted_total;
        }
    }

    void resume(Host& h) {
        if (!h.suspended) return;
        h.outcome.suspensions.emplace_back(h.suspended_since, now_);
        h.suspended = false;
        h.time_shift += now_ - h.suspended_since;
        schedule_next_step(h);
    }

    void escalate(Host& h) {
        h.outcome.escalated = true;
        h.outcome.escalated_at = now_;
        if (runs_acom(cfg_.mechanism)) {
            auto made = create_ant(h.acom, true, cfg_.acom, now_, ++result_.ants_created);
            if (auto* report = std::get_if<AcomReport>(&made)) {
                --result_.ants_created;
                h.outcome.acom_report = std::move(*report);
                h.outcome.acom_reported_at = now_;
            } else {
                Ant& ant = std::get<Ant>(made);
                const auto next = first_hop(h.acom, h.rng);
                send(MessageKind::ant_transfer, h.id, *next, std::move(ant), std::nullopt);
            }
        }
        if (runs_bm(cfg_.mechanism)) {
            h.bm.window_start = now_;
            for (const BmAnnouncement& a : bm_broadcast(h.id, h.bm, true, now_)) {
                send(MessageKind::bm_announce, a.src, a.dst, std::nullopt, std::nullopt);
            }
            push(now_ + cfg_.bm_window_seconds, BmWindowEnd{h.id});
        }
    }

    void send(MessageKind kind, NodeId src, NodeId dst, std::optional<Ant> ant,
              std::optional<AcomReport> report) {
        const SimTime deliver = now_ + cfg_.per_hop_delay;
        result_.messages.push_back({now_, deliver, kind, src, dst});
        in_flight_.push_back({kind, src, dst, std::move(ant), std::move(report)});
        push(deliver, Delivery{in_flight_.size() - 1});
    }

    bool fresh_verdict(const Host& h) const {
        return h.last_verdict && now_ - h.last_verdict->decided_at <= cfg_.acom.verdict_staleness;
    }

    void arrive(Host& h, Ant ant) {
        if (fresh_verdict(h)) {
            work_ant(h, std::move(ant), h.last_verdict->anomalous());
            return;
        }
        h.waiting_ants.push_back(std::move(ant));
        if (h.detector.diagnosing() || h.pass_open) return;
        // Fresh pass: watch the host for one observation window.
        h.pass_open = true;
        push(now_ + cfg_.detector.frequency.max_wait_seconds, PassDeadline{h.id, ++h.pass_generation});
    }

    void release_ants(Host& h, bool anomalous) {
        if (h.waiting_ants.empty()) return;
        std::vector<Ant> ants = std::move(h.waiting_ants);
        h.waiting_ants.clear();
        for (Ant& ant : ants) work_ant(h, std::move(ant), anomalous);
    }

    void work_ant(Host& h, Ant ant, bool anomalous) {
        exchange_information(ant, h.acom, anomalous, now_, cfg_.acom);
        result_.max_ant_hops =
            std::max(result_.max_ant_hops, static_cast<std::uint32_t>(ant.visited.size()));
        StepOutcome step = acom_step(ant, h.acom, cfg_.acom, h.rng);
        if (auto* go = std::get_if<Continue>(&step)) {
            send(MessageKind::ant_transfer, h.id, go->next, std::move(ant), std::nullopt);
        } else {
            const NodeId home = ant.home;
            send(MessageKind::ant_return, h.id, home, std::move(ant),
                 std::move(std::get<ReturnHome>(step).report));
        }
    }

    void ant_home(Host& h, Ant ant, AcomReport report) {
        h.acom.known_anomalous.insert(ant.collected.begin(), ant.collected.end());
        const bool alert = report.verdict == AcomVerdict::alert;
        h.outcome.acom_report = std::move(report);
        h.outcome.acom_reported_at = now_;
        // Judged safe: the suspended tasks resume and local detection carries on.
        if (!alert) resume(h);
    }

    ScenarioConfig cfg_;
    std::vector<Host> hosts_;
    std::priority_queue<Scheduled, std::vector<Scheduled>, Later> queue_;
    std::vector<InFlight> in_flight_;
    std::uint64_t seq_ = 0;
    SimTime now_ = 0.0;
    RunResult result_;
};

}  // namespace

RunResult run(const ScenarioConfig& scenario) { return Simulator(scenario).run(); }

}  // namespace naa
