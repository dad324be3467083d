// gossipbench: run asynchronous push & pull experiments from the command line.
//
//   gossipbench stats <edge-list> [--kind undirected|directed|signed]
//   gossipbench run   [--config file] [--<key> value ...]
//   gossipbench sweep --axis <name> --values v1,v2,... [--config file] [--<key> value ...]
//
// Exit codes: 0 success, 2 configuration or input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "gossip/experiment.hpp"

namespace {

constexpr int exit_input_error = 2;

std::string flag_name(std::string_view key)
{
    std::string flag = "--";
    for (char c : key)
        flag += c == '_' ? '-' : c;
    return flag;
}

struct SharedOptions {
    std::string config_path;
    std::map<std::string, std::string> values;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--config", config_path, "flat key = value configuration file");
        for (auto key : gossip::ExperimentConfig::keys())
            cmd.add_option(flag_name(key), values[std::string(key)], "overrides config key " + std::string(key));
    }

    gossip::ExperimentConfig build(const CLI::App& cmd) const
    {
        gossip::ExperimentConfig cfg;
        if (!config_path.empty())
            gossip::load_config_file(config_path, cfg);
        for (auto key : gossip::ExperimentConfig::keys()) {
            if (cmd.count(flag_name(key)) > 0)
                cfg.set(key, values.at(std::string(key)));
        }
        cfg.validate();
        return cfg;
    }
};

std::string summary_path(const std::string& out)
{
    std::filesystem::path p(out);
    const std::string stem = p.extension() == ".csv" ? p.stem().string() : p.filename().string();
    return (p.parent_path() / (stem + ".summary.csv")).string();
}

void emit(const gossip::ExperimentConfig& cfg, const gossip::ExperimentResult& result, bool with_axis)
{
    if (cfg.out.empty()) {
        gossip::write_rows_csv(std::cout, result.rows, with_axis);
        std::cout << '\n';
        gossip::write_summary_csv(std::cout, result.summary, with_axis);
    } else {
        std::ofstream rows(cfg.out);
        std::ofstream summary(summary_path(cfg.out));
        if (!rows || !summary)
            throw gossip::ConfigError("out", "cannot write '" + cfg.out + "'");
        gossip::write_rows_csv(rows, result.rows, with_axis);
        gossip::write_summary_csv(summary, result.summary, with_axis);
    }
    if (!cfg.trace.empty()) {
        std::ofstream trace(cfg.trace);
        if (!trace)
            throw gossip::ConfigError("trace", "cannot write '" + cfg.trace + "'");
        trace << result.trace;
    }
}

std::vector<std::string> split_values(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Asynchronous push & pull rumour spreading experiments"};
    app.require_subcommand(1);

    auto* stats = app.add_subcommand("stats", "structural statistics of a dataset's largest component");
    std::string stats_dataset;
    std::string stats_kind = "undirected";
    std::string stats_sign = "positive";
    std::string stats_component = "weak";
    double stats_percentile = gossip::default_group_percentile;
    stats->add_option("dataset", stats_dataset, "edge-list file")->required();
    stats->add_option("--kind", stats_kind, "undirected, directed or signed");
    stats->add_option("--sign-policy", stats_sign, "positive or all");
    stats->add_option("--component", stats_component, "weak or strong");
    stats->add_option("--group-percentile", stats_percentile, "degree percentile separating groups 2 and 3");

    auto* run = app.add_subcommand("run", "run replications and write CSV results");
    SharedOptions run_opts;
    run_opts.attach(*run);

    auto* sweep = app.add_subcommand("sweep", "run one experiment per value of a parameter");
    SharedOptions sweep_opts;
    sweep_opts.attach(*sweep);
    std::string axis;
    std::string values;
    sweep->add_option("--axis", axis, "policy, memory, stopping, f_abs, f_rel or originator")->required();
    sweep->add_option("--values", values, "comma-separated axis values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    try {
        if (*stats) {
            gossip::ExperimentConfig cfg;
            cfg.set("dataset", stats_dataset);
            cfg.set("kind", stats_kind);
            cfg.set("sign_policy", stats_sign);
            cfg.set("component", stats_component);
            const auto graph = gossip::load_graph(cfg);
            gossip::write_stats(std::cout, graph, stats_percentile);
        } else if (*run) {
            const auto cfg = run_opts.build(*run);
            const auto graph = gossip::load_graph(cfg);
            emit(cfg, gossip::run_experiment(cfg, graph, !cfg.trace.empty()), false);
        } else if (*sweep) {
            const auto cfg = sweep_opts.build(*sweep);
            const auto graph = gossip::load_graph(cfg);
            emit(cfg, gossip::run_sweep(cfg, graph, axis, split_values(values)), true);
        }
    } catch (const std::exception& e) {
        std::cerr << "gossipbench: " << e.what() << '\n';
        return exit_input_error;
    }
    return 0;
}
