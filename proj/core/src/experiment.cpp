#include "gossip/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace gossip {

ConfigError::ConfigError(std::string key, const std::string& what)
    : std::runtime_error(key + ": " + what), key_(std::move(key))
{
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
    return value;
}

double parse_real(std::string_view key, std::string_view text)
{
    double value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(value))
        throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
    return value;
}

/// "4%" -> 0.04; plain numbers are taken as fractions.
double parse_fraction(std::string_view key, std::string_view text)
{
    if (!text.empty() && text.back() == '%')
        return parse_real(key, trim(text.substr(0, text.size() - 1))) / 100.0;
    return parse_real(key, text);
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <typename F>
auto wrap(std::string_view key, F&& parse)
{
    try {
        return parse();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string(key), e.what());
    }
}

} // namespace

OriginatorScheme OriginatorScheme::parse(std::string_view text)
{
    OriginatorScheme s;
    const auto parts = split(text, ':');
    if (parts.size() == 1 && parts[0] == "max_degree")
        return s;
    if (parts.size() == 2 && parts[0] == "node") {
        s.kind = Kind::node_label;
        s.label = parse_integer<NodeLabel>("originator", parts[1]);
        return s;
    }
    if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "group") {
        s.kind = Kind::group_sample;
        s.group = wrap("originator", [&] { return parse_group(parts[1]); });
        if (parts.size() == 3)
            s.fraction = parse_fraction("originator", parts[2]);
        if (!(s.fraction > 0.0 && s.fraction <= 1.0))
            throw ConfigError("originator", "group sample fraction must lie in (0, 1]");
        return s;
    }
    throw ConfigError("originator", "expected max_degree, node:<label> or group:<g1|g2|g3>[:<fraction>]");
}

std::string OriginatorScheme::to_string() const
{
    switch (kind) {
    case Kind::max_degree: return "max_degree";
    case Kind::node_label: return "node:" + std::to_string(label);
    case Kind::group_sample: return "group:" + std::string(gossip::to_string(group)) + ":" + format_real(fraction);
    }
    return "?";
}

const std::vector<std::string_view>& ExperimentConfig::keys()
{
    static const std::vector<std::string_view> all{
        "preset", "dataset", "generator", "kind", "sign_policy", "component",
        "policy", "memory", "stopping", "log_base", "c_lnln", "c_log", "c_logsq", "c_nlogn",
        "mc_ctr_max", "mc_c_phase", "mc_safety", "fanout_mode", "fanout_abs", "fanout_rel",
        "hybrid_middle_abs", "clock_mean", "run_mode", "max_sim_time", "removed_replies",
        "group_percentile", "originator", "reps", "seed", "workers", "targets", "out", "trace",
        "bw_min_mbps", "bw_max_mbps", "lat_min_ms", "lat_max_ms"};
    return all;
}

void ExperimentConfig::set(std::string_view key, std::string_view raw)
{
    const std::string_view value = trim(raw);
    const std::string k(key);
    auto& st = sim.stopping;
    auto& fo = sim.fanout;

    if (key == "preset") {
        if (value == "enhanced") {
            sim.policy = Policy::qpu;
            sim.memory = 0;
            st.criterion = Criterion::log_sq_n;
            fo.mode = FanoutMode::hybrid;
            fo.f_rel = 0.04;
            fo.hybrid_middle_abs = 2;
        } else if (value == "vanilla") {
            sim.policy = Policy::random;
            sim.memory = 0;
            st.criterion = Criterion::none;
            fo = FanoutConfig{};
        } else {
            throw ConfigError(k, "unknown preset '" + std::string(value) + "' (enhanced, vanilla)");
        }
    } else if (key == "dataset") {
        dataset = value;
    } else if (key == "generator") {
        generator = value;
    } else if (key == "kind") {
        kind = wrap(key, [&] { return parse_graph_kind(value); });
    } else if (key == "sign_policy") {
        sign_policy = wrap(key, [&] { return parse_sign_policy(value); });
    } else if (key == "component") {
        component = wrap(key, [&] { return parse_component_mode(value); });
    } else if (key == "policy") {
        sim.policy = wrap(key, [&] { return parse_policy(value); });
    } else if (key == "memory") {
        sim.memory = parse_integer<std::size_t>(key, value);
    } else if (key == "stopping") {
        st.criterion = wrap(key, [&] { return parse_criterion(value); });
    } else if (key == "log_base") {
        st.log_base = parse_real(key, value);
    } else if (key == "c_lnln") {
        st.c_lnln = parse_real(key, value);
    } else if (key == "c_log") {
        st.c_log = parse_real(key, value);
    } else if (key == "c_logsq") {
        st.c_logsq = parse_real(key, value);
    } else if (key == "c_nlogn") {
        st.c_nlogn = parse_real(key, value);
    } else if (key == "mc_ctr_max") {
        st.mc_ctr_max = parse_integer<std::uint32_t>(key, value);
    } else if (key == "mc_c_phase") {
        st.mc_c_phase = parse_integer<std::uint32_t>(key, value);
    } else if (key == "mc_safety") {
        st.mc_safety = parse_real(key, value);
    } else if (key == "fanout_mode") {
        fo.mode = wrap(key, [&] { return parse_fanout_mode(value); });
    } else if (key == "fanout_abs") {
        fo.f_abs = parse_integer<std::size_t>(key, value);
        fo.mode = FanoutMode::absolute;
    } else if (key == "fanout_rel") {
        fo.f_rel = parse_fraction(key, value);
        if (fo.mode != FanoutMode::hybrid)
            fo.mode = FanoutMode::relative;
    } else if (key == "hybrid_middle_abs") {
        fo.hybrid_middle_abs = parse_integer<std::size_t>(key, value);
    } else if (key == "clock_mean") {
        sim.clock.mean_interval = parse_real(key, value);
    } else if (key == "run_mode") {
        if (value == "auto")
            run_mode.reset();
        else
            run_mode = wrap(key, [&] { return parse_run_mode(value); });
    } else if (key == "max_sim_time") {
        sim.max_sim_time = parse_real(key, value);
    } else if (key == "removed_replies") {
        sim.removed_replies = wrap(key, [&] { return parse_removed_replies(value); });
    } else if (key == "group_percentile") {
        sim.group_percentile = parse_fraction(key, value);
    } else if (key == "originator") {
        originator = OriginatorScheme::parse(value);
    } else if (key == "reps") {
        reps = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
        seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "workers") {
        workers = parse_integer<std::size_t>(key, value);
    } else if (key == "targets") {
        std::vector<double> parsed;
        for (auto part : split(value, ','))
            parsed.push_back(parse_fraction(key, part));
        targets = std::move(parsed);
    } else if (key == "out") {
        out = value;
    } else if (key == "trace") {
        trace = value;
    } else if (key == "bw_min_mbps") {
        links.bw_min_bps = parse_real(key, value) * 1e6;
    } else if (key == "bw_max_mbps") {
        links.bw_max_bps = parse_real(key, value) * 1e6;
    } else if (key == "lat_min_ms") {
        links.lat_min_s = parse_real(key, value) / 1e3;
    } else if (key == "lat_max_ms") {
        links.lat_max_s = parse_real(key, value) / 1e3;
    } else {
        throw ConfigError(k, "unknown configuration key");
    }
}

void ExperimentConfig::validate() const
{
    if (dataset.empty() == generator.empty())
        throw ConfigError("dataset", "exactly one of dataset or generator must be set");
    if (reps < 1)
        throw ConfigError("reps", "must be >= 1");
    if (workers < 1)
        throw ConfigError("workers", "must be >= 1");
    if (targets.empty())
        throw ConfigError("targets", "at least one target is required");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!(targets[i] > 0.0 && targets[i] <= 1.0))
            throw ConfigError("targets", "targets must lie in (0, 1]");
        if (i > 0 && !(targets[i] > targets[i - 1]))
            throw ConfigError("targets", "targets must be strictly ascending");
    }
    if (sim.memory > 0 && is_quasirandom(sim.policy))
        throw ConfigError("memory", "neighbor memory requires policy random");
    wrap("links", [&] { links.validate(); });
    wrap("config", [&] { sim.validate(); });
}

void load_config(std::istream& in, ExperimentConfig& cfg)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        cfg.set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

void load_config_file(const std::string& path, ExperimentConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    load_config(in, cfg);
}

std::string resolve_dataset_path(const std::string& path)
{
    namespace fs = std::filesystem;
    if (fs::exists(path))
        return path;
    if (const char* dir = std::getenv("GOSSIPBENCH_DATA"); dir && *dir) {
        const fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate))
            return candidate.string();
    }
    return path;
}

LoadedGraph load_graph(const ExperimentConfig& cfg)
{
    LoadedGraph out;
    if (!cfg.dataset.empty()) {
        out.raw = load_edge_list(resolve_dataset_path(cfg.dataset), cfg.kind, cfg.sign_policy);
        out.name = std::filesystem::path(cfg.dataset).filename().string();
    } else {
        const auto parts = split(cfg.generator, ':');
        if (parts.size() < 3 || parts.size() > 4 || parts[0] != "pa")
            throw ConfigError("generator", "expected pa:<n>:<attach>[:<seed>]");
        const auto n = parse_integer<std::size_t>("generator", parts[1]);
        const auto attach = parse_integer<std::size_t>("generator", parts[2]);
        const auto seed = parts.size() == 4 ? parse_integer<std::uint64_t>("generator", parts[3]) : 1;
        Rng rng(seed);
        out.raw = wrap("generator", [&] { return generate_pa(n, attach, rng); });
        out.name = cfg.generator;
    }
    if (out.raw.node_count() == 0)
        throw std::runtime_error("graph '" + out.name + "' has no edges");
    out.lcc = largest_connected_component(out.raw, cfg.component);
    return out;
}

SimConfig effective_sim_config(const ExperimentConfig& cfg, const Graph& g)
{
    SimConfig sim = cfg.sim;
    if (sim.fanout.mode == FanoutMode::hybrid && !g.is_undirected())
        sim.fanout.mode = FanoutMode::relative;
    if (cfg.run_mode)
        sim.run_mode = *cfg.run_mode;
    else
        sim.run_mode = sim.stopping.criterion == Criterion::none ? RunMode::until_all_informed
                                                                 : RunMode::until_quiescent;
    return sim;
}

NodeId pick_originator(const OriginatorScheme& scheme, const Graph& g, const GroupAssignment& groups,
                       std::uint64_t base_seed, std::size_t run)
{
    switch (scheme.kind) {
    case OriginatorScheme::Kind::max_degree: {
        NodeId best = 0;
        for (NodeId v = 1; v < g.node_count(); ++v)
            if (g.out_degree(v) > g.out_degree(best))
                best = v;
        return best;
    }
    case OriginatorScheme::Kind::node_label: {
        const auto labels = g.labels();
        const auto it = std::lower_bound(labels.begin(), labels.end(), scheme.label);
        if (it == labels.end() || *it != scheme.label)
            throw ConfigError("originator", "node " + std::to_string(scheme.label)
                                                + " is not in the largest connected component");
        return static_cast<NodeId>(it - labels.begin());
    }
    case OriginatorScheme::Kind::group_sample: {
        auto members = groups.members(scheme.group);
        if (members.empty())
            throw ConfigError("originator", "group " + std::string(to_string(scheme.group)) + " is empty");
        const auto k = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(scheme.fraction * static_cast<double>(members.size()) - 1e-9)));
        Rng rng(splitmix64(base_seed ^ 0x6f726967696e61ULL));
        for (std::size_t i = 0; i < k; ++i)
            std::swap(members[i], members[i + rng.below(members.size() - i)]);
        return members[run % k];
    }
    }
    return 0;
}

namespace {

std::vector<ResultRow> rows_for_run(const ExperimentConfig& cfg, const SimConfig& sim, const LoadedGraph& graph,
                                    std::size_t run, std::uint64_t seed, NodeId originator,
                                    const RunMetrics& metrics)
{
    std::vector<ResultRow> rows;
    for (double pct : cfg.targets) {
        ResultRow row;
        row.run = run;
        row.seed = seed;
        row.dataset = graph.name;
        row.policy = to_string(sim.policy);
        row.memory = sim.memory;
        row.stopping = to_string(sim.stopping.criterion);
        row.fanout_mode = to_string(sim.fanout.mode);
        row.fanout_value = sim.fanout.mode == FanoutMode::absolute ? static_cast<double>(sim.fanout.f_abs)
                                                                   : sim.fanout.f_rel;
        row.originator = graph.lcc.label(originator);
        row.target_pct = pct;
        row.time_s = time_to_fraction(metrics, pct);
        row.messages = messages_to_fraction(metrics, pct);
        row.load_mps = network_load(metrics, pct);
        row.final_pct = metrics.final_informed_pct();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, const LoadedGraph& graph, bool capture_trace)
{
    cfg.validate();
    const SimConfig sim = effective_sim_config(cfg, graph.lcc);
    const Scenario scenario(graph.lcc, sim);
    const std::size_t n = graph.lcc.node_count();

    std::vector<std::vector<ResultRow>> per_run(cfg.reps);
    std::vector<std::string> traces(capture_trace ? cfg.reps : 0);

    auto run_one = [&](std::size_t r) {
        const std::uint64_t seed = derive_run_seed(cfg.seed, r);
        Rng rng(seed);
        const LinkTable links = assign_links(n, rng, cfg.links);
        const NodeId origin = pick_originator(cfg.originator, graph.lcc, scenario.groups(), cfg.seed, r);
        std::ostringstream trace;
        std::optional<TraceWriter> writer;
        if (capture_trace) {
            trace << "# run " << r << " seed " << seed << '\n';
            writer.emplace(trace);
        }
        const RunOutcome outcome = scenario.run(links, origin, rng, writer ? &*writer : nullptr);
        per_run[r] = rows_for_run(cfg, sim, graph, r, seed, origin, outcome.metrics);
        if (capture_trace)
            traces[r] = trace.str();
    };

    const std::size_t workers = std::min(cfg.workers, cfg.reps);
    if (workers <= 1) {
        for (std::size_t r = 0; r < cfg.reps; ++r)
            run_one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < cfg.reps; r = next++) {
                    try {
                        run_one(r);
                    } catch (...) {
                        const std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    ExperimentResult result;
    for (auto& rows : per_run)
        for (auto& row : rows)
            result.rows.push_back(std::move(row));
    result.summary = summarize_rows(result.rows, cfg.targets);
    for (auto& t : traces)
        result.trace += t;
    return result;
}

std::vector<TargetSummary> summarize_rows(const std::vector<ResultRow>& rows, const std::vector<double>& targets)
{
    std::vector<TargetSummary> out;
    for (double pct : targets) {
        TargetSummary s;
        s.target_pct = pct;
        std::vector<double> times;
        std::vector<double> loads;
        double final_sum = 0;
        for (const auto& row : rows) {
            if (row.target_pct != pct)
                continue;
            ++s.runs;
            final_sum += row.final_pct;
            if (row.time_s)
                times.push_back(*row.time_s);
            if (row.load_mps)
                loads.push_back(*row.load_mps);
        }
        s.time = summarize(times);
        s.load = summarize(loads);
        s.final_pct_mean = s.runs ? final_sum / static_cast<double>(s.runs) : 0.0;
        out.push_back(s);
    }
    return out;
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s(buf);
    if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_axis)
{
    out << csv_header << (with_axis ? ",axis_value" : "") << '\n';
    for (const auto& r : rows) {
        out << r.run << ',' << r.seed << ',' << csv_field(r.dataset) << ',' << r.policy << ',' << r.memory << ','
            << r.stopping << ',' << r.fanout_mode << ',' << format_real(r.fanout_value) << ',' << r.originator << ','
            << format_real(r.target_pct) << ',' << (r.time_s ? format_real(*r.time_s) : "") << ','
            << (r.messages ? std::to_string(*r.messages) : "") << ','
            << (r.load_mps ? format_real(*r.load_mps) : "") << ',' << format_real(r.final_pct);
        if (with_axis)
            out << ',' << csv_field(r.axis_value);
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<TargetSummary>& summary, bool with_axis)
{
    out << "target_pct,runs,reached,time_mean,time_std,load_mean,load_std,final_pct_mean"
        << (with_axis ? ",axis_value" : "") << '\n';
    for (const auto& s : summary) {
        out << format_real(s.target_pct) << ',' << s.runs << ',' << s.time.count << ',';
        if (s.time.count)
            out << format_real(s.time.mean) << ',' << format_real(s.time.stddev);
        else
            out << ',';
        out << ',';
        if (s.load.count)
            out << format_real(s.load.mean) << ',' << format_real(s.load.stddev);
        else
            out << ',';
        out << ',' << format_real(s.final_pct_mean);
        if (with_axis)
            out << ',' << csv_field(s.axis_value);
        out << '\n';
    }
}

ExperimentResult run_sweep(const ExperimentConfig& base, const LoadedGraph& graph, std::string_view axis,
                           const std::vector<std::string>& values)
{
    if (std::find(sweep_axes.begin(), sweep_axes.end(), axis) == sweep_axes.end())
        throw ConfigError("axis", "unknown sweep axis '" + std::string(axis) + "'");
    if (values.empty())
        throw ConfigError("values", "at least one value is required");

    ExperimentResult all;
    for (const auto& value : values) {
        ExperimentConfig cfg = base;
        if (axis == "f_abs") {
            cfg.set("fanout_abs", value);
        } else if (axis == "f_rel") {
            cfg.set("fanout_rel", value);
        } else if (axis == "memory") {
            cfg.set("policy", "random");
            cfg.set("memory", value);
        } else {
            cfg.set(axis, value);
        }
        auto result = run_experiment(cfg, graph);
        for (auto& row : result.rows) {
            row.axis_value = value;
            all.rows.push_back(std::move(row));
        }
        for (auto& s : result.summary) {
            s.axis_value = value;
            all.summary.push_back(std::move(s));
        }
    }
    return all;
}

void write_stats(std::ostream& out, const LoadedGraph& graph, double group_percentile)
{
    const GraphStats stats = graph_stats(graph.lcc);
    const GroupAssignment groups = classify_groups(graph.lcc, group_percentile);
    out << "dataset\t" << graph.name << '\n'
        << "kind\t" << to_string(graph.lcc.kind()) << '\n'
        << "dataset_nodes\t" << graph.raw.node_count() << '\n'
        << "dataset_edges\t" << graph.raw.edge_count() << '\n'
        << "lcc_nodes\t" << stats.nodes << '\n'
        << "lcc_edges\t" << stats.edges << '\n'
        << "min_out_degree\t" << stats.min_out_degree << '\n'
        << "max_out_degree\t" << stats.max_out_degree << '\n'
        << "mean_out_degree\t" << format_real(stats.mean_out_degree) << '\n'
        << "clustering\t" << format_real(stats.avg_local_clustering) << '\n'
        << "group_threshold\t" << groups.threshold_degree << '\n'
        << "group1_nodes\t" << groups.members(Group::singleton).size() << '\n'
        << "group2_nodes\t" << groups.members(Group::middle).size() << '\n'
        << "group3_nodes\t" << groups.members(Group::giant).size() << '\n';
}

} // namespace gossip
