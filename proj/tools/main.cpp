#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilhedge/config.hpp"
#include "ilhedge/experiments.hpp"
#include "ilhedge/replication.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open output file");
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impermanent loss analytics and static option hedging for concentrated liquidity"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::uint64_t paths = 0;
    std::uint64_t strikes = 0;
    std::uint64_t steps = 0;
    std::uint64_t threads = 0;
    double horizon = 0.0;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    auto* out_opt = app.add_option("--out", out_path, "output CSV path (default: stdout)");
    auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed override");
    auto* paths_opt = app.add_option("--paths", paths, "Monte Carlo path count override");
    auto* strikes_opt = app.add_option("--strikes", strikes, "replication strike count override");
    auto* steps_opt = app.add_option("--steps", steps, "Monte Carlo step count override");
    auto* threads_opt = app.add_option("--threads", threads, "simulation worker threads (0 = auto)");
    auto* horizon_opt = app.add_option("--horizon", horizon, "horizon in years override");

    auto* il_cmd = app.add_subcommand("il", "impermanent loss and holdings at given exit prices");
    std::vector<double> exits;
    il_cmd->add_option("--exit", exits, "exit price (repeatable)");

    auto* table1_cmd =
        app.add_subcommand("table1", "Heston parameter sweep: direct E[UIL] vs static replication");
    auto* figure1_cmd =
        app.add_subcommand("figure1", "closed-form E[UIL] sensitivity grids over sigma and horizon");

    auto* hedge_cmd = app.add_subcommand("hedge", "build a hedge portfolio from an option chain");
    std::string chain_path;
    double maturity_tol = -1.0;
    hedge_cmd->add_option("chain", chain_path, "option chain CSV")->required();
    hedge_cmd->add_option("--maturity-tol", maturity_tol,
                          "accepted |quote maturity - horizon| in years");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ilhedge::ExperimentConfig config =
            config_path.empty() ? ilhedge::ExperimentConfig{} : ilhedge::load_config(config_path);
        if (seed_opt->count()) ilhedge::apply_key(config, "mc.seed", std::to_string(seed), "--seed");
        if (paths_opt->count())
            ilhedge::apply_key(config, "mc.paths", std::to_string(paths), "--paths");
        if (strikes_opt->count())
            ilhedge::apply_key(config, "quadrature.strikes", std::to_string(strikes), "--strikes");
        if (steps_opt->count())
            ilhedge::apply_key(config, "mc.steps", std::to_string(steps), "--steps");
        if (threads_opt->count())
            ilhedge::apply_key(config, "mc.threads", std::to_string(threads), "--threads");
        if (horizon_opt->count()) {
            char full[40];
            std::snprintf(full, sizeof(full), "%.17g", horizon);
            ilhedge::apply_key(config, "horizon", full, "--horizon");
        }
        if (out_opt->count()) config.output = out_path;
        if (!exits.empty()) config.il_exits = exits;
        if (maturity_tol >= 0.0) config.hedge_maturity_tol = maturity_tol;
        config.validate();

        if (il_cmd->parsed()) {
            write_output(config.output, ilhedge::il_csv(ilhedge::run_il(config)));
        } else if (table1_cmd->parsed()) {
            const auto rows = ilhedge::run_table1(config);
            for (const auto& row : rows) {
                std::cerr << row.scenario << " " << ilhedge::to_string(row.side) << ": direct "
                          << ilhedge::format_g9(row.direct) << " +- "
                          << ilhedge::format_g9(row.direct_se) << ", replication "
                          << ilhedge::format_g9(row.replication) << ", ratio "
                          << ilhedge::format_g9(row.error_ratio) << " ("
                          << ilhedge::format_g9(row.wall_seconds) << " s)\n";
            }
            write_output(config.output, ilhedge::table1_csv(rows));
        } else if (figure1_cmd->parsed()) {
            write_output(config.output, ilhedge::figure1_csv(ilhedge::run_figure1(config)));
        } else if (hedge_cmd->parsed()) {
            std::ifstream chain_file(chain_path);
            if (!chain_file) throw std::invalid_argument(chain_path + ": cannot open chain file");
            const auto chain = ilhedge::parse_chain_csv(chain_file, chain_path);
            const auto report = ilhedge::run_hedge(config, chain);
            write_output(config.output, ilhedge::hedge_csv(report));
            std::cerr << ilhedge::hedge_summary(report);
        }
    } catch (const ilhedge::UnhedgeableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
