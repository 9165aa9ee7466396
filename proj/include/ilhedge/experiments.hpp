#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ilhedge/config.hpp"
#include "ilhedge/replication.hpp"
#include "ilhedge/types.hpp"

namespace ilhedge {

// Floats in CSV output carry 9 significant digits. Values are snapped to
// that precision when a row is built, so emitted files re-parse into
// bit-identical rows.
std::string format_g9(double value);
double snap_g9(double value);

// One parameter-sweep scenario result. Wall time is console diagnostics
// only; it is never serialized, keeping output files byte-reproducible.
struct ResultRow {
    std::string scenario;
    Side side{Side::Right};
    double direct{0.0};
    double direct_se{0.0};
    double replication{0.0};
    double error_ratio{0.0};
    double wall_seconds{0.0};
};

std::vector<ResultRow> run_table1(const ExperimentConfig& config);
std::string table1_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_table1_csv(std::istream& in);

struct IlRow {
    Side side{Side::Right};
    double lower{0.0}, upper{0.0}, liquidity{0.0}, entry_price{0.0}, exit_price{0.0};
    double exit_x{0.0}, exit_y{0.0};
    double il{0.0}, uil_value{0.0}, avg_sell_price{0.0};
};

std::vector<IlRow> run_il(const ExperimentConfig& config);
std::string il_csv(const std::vector<IlRow>& rows);
std::vector<IlRow> parse_il_csv(std::istream& in);

struct Figure1Row {
    std::string sweep;  // "sigma" or "horizon"
    double sigma{0.0};
    double horizon{0.0};
    double right_value{0.0};
    double left_value{0.0};
};

std::vector<Figure1Row> run_figure1(const ExperimentConfig& config);
std::string figure1_csv(const std::vector<Figure1Row>& rows);

struct HedgeReport {
    HedgePortfolio portfolio;
    std::vector<std::string> warnings;
    double model_expected_uil{0.0};  // E[UIL] under the configured model
    double cost{0.0};
};

HedgeReport run_hedge(const ExperimentConfig& config, const std::vector<OptionQuote>& chain);
std::string hedge_csv(const HedgeReport& report);
std::string hedge_summary(const HedgeReport& report);

// Option chain CSV: header "kind,strike,maturity_years,price",
// kind in {call, put}, strikes in any order.
std::vector<OptionQuote> parse_chain_csv(std::istream& in, const std::string& name);

} // namespace ilhedge
