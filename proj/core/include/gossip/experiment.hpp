#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gossip/engine.hpp"
#include "gossip/graph.hpp"
#include "gossip/netmodel.hpp"

namespace gossip {

/// Bad configuration key or value; carries the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct OriginatorScheme {
    enum class Kind { max_degree, node_label, group_sample };

    Kind kind = Kind::max_degree;
    NodeLabel label = 0;         // node_label
    Group group = Group::giant;  // group_sample
    double fraction = 0.10;      // group_sample

    /// "max_degree", "node:<label>" or "group:<g1|g2|g3>[:<fraction>]".
    static OriginatorScheme parse(std::string_view text);
    std::string to_string() const;
};

struct ExperimentConfig {
    std::string dataset;   // edge-list path
    std::string generator; // "pa:<n>:<attach>[:<seed>]" when no dataset is given
    GraphKind kind = GraphKind::undirected;
    SignPolicy sign_policy = SignPolicy::keep_positive_only;
    ComponentMode component = ComponentMode::weak;

    SimConfig sim;
    std::optional<RunMode> run_mode; // unset: derived from the stopping criterion
    LinkRanges links;
    OriginatorScheme originator;

    std::size_t reps = 50;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::vector<double> targets{0.90, 0.97, 1.0};
    std::string out;
    std::string trace;

    /// Applies one `key = value` setting. Throws ConfigError.
    void set(std::string_view key, std::string_view value);
    void validate() const;

    /// Every key `set` understands, in documentation order.
    static const std::vector<std::string_view>& keys();
};

/// Reads flat `key = value` lines ('#' starts a comment) into cfg.
void load_config(std::istream& in, ExperimentConfig& cfg);
void load_config_file(const std::string& path, ExperimentConfig& cfg);

/// Resolves a dataset path, falling back to $GOSSIPBENCH_DATA/<path>.
std::string resolve_dataset_path(const std::string& path);

struct LoadedGraph {
    Graph raw;
    Graph lcc;
    std::string name;
};

/// Parses or generates the input graph and extracts its largest component.
LoadedGraph load_graph(const ExperimentConfig& cfg);

/// The simulation settings actually used on graph g: hybrid fan-out falls
/// back to relative off undirected graphs and an unset run mode follows the
/// stopping criterion.
SimConfig effective_sim_config(const ExperimentConfig& cfg, const Graph& g);

struct ResultRow {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    std::string dataset;
    std::string policy;
    std::size_t memory = 0;
    std::string stopping;
    std::string fanout_mode;
    double fanout_value = 0;
    NodeLabel originator = 0;
    double target_pct = 0;
    std::optional<double> time_s;
    std::optional<std::uint64_t> messages;
    std::optional<double> load_mps;
    double final_pct = 0;
    std::string axis_value; // sweeps only
};

struct TargetSummary {
    double target_pct = 0;
    std::size_t runs = 0;
    SampleSummary time;
    SampleSummary load;
    double final_pct_mean = 0;
    std::string axis_value; // sweeps only
};

struct ExperimentResult {
    std::vector<ResultRow> rows; // ordered by (run, target)
    std::vector<TargetSummary> summary;
    std::string trace;           // concatenated per-run traces when requested
};

/// Originator chosen for replication `run` (group_sample draws its member
/// sample from the base seed, then cycles through it).
NodeId pick_originator(const OriginatorScheme& scheme, const Graph& g, const GroupAssignment& groups,
                       std::uint64_t base_seed, std::size_t run);

ExperimentResult run_experiment(const ExperimentConfig& cfg, const LoadedGraph& graph, bool capture_trace = false);

std::vector<TargetSummary> summarize_rows(const std::vector<ResultRow>& rows, const std::vector<double>& targets);

inline constexpr std::string_view csv_header =
    "run,seed,dataset,policy,memory,stopping,fanout_mode,fanout_value,originator,target_pct,time_s,messages,"
    "load_mps,final_pct";

/// Six significant digits; integral values keep a trailing ".0".
std::string format_real(double v);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_axis = false);
void write_summary_csv(std::ostream& out, const std::vector<TargetSummary>& summary, bool with_axis = false);

inline const std::vector<std::string_view> sweep_axes{"policy", "memory", "stopping", "f_abs", "f_rel", "originator"};

/// One experiment per axis value, rows concatenated with an axis_value column.
/// Throws ConfigError for an unknown axis or a bad value.
ExperimentResult run_sweep(const ExperimentConfig& base, const LoadedGraph& graph, std::string_view axis,
                           const std::vector<std::string>& values);

/// `key<TAB>value` lines describing the graph and its largest component.
void write_stats(std::ostream& out, const LoadedGraph& graph, double group_percentile);

} // namespace gossip
