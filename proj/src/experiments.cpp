#include "ilhedge/experiments.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "ilhedge/amm.hpp"
#include "ilhedge/gbm.hpp"
#include "ilhedge/heston.hpp"
#include "ilhedge/payoff.hpp"

namespace ilhedge {

std::string format_g9(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

double snap_g9(double value) {
    return std::strtod(format_g9(value).c_str(), nullptr);
}

namespace {

HestonParams heston_from_config(const ExperimentConfig& c) {
    return HestonParams{c.heston.mu, c.heston.kappa, c.heston.theta, c.heston.xi,
                        c.heston.rho, c.heston.v0, c.heston.spot};
}

McConfig mc_from_config(const ExperimentConfig& c) {
    return McConfig{c.mc.paths, c.mc.steps, c.mc.seed};
}

std::string side_field(Side side) { return to_string(side); }

Side parse_side(const std::string& s, const std::string& context) {
    if (s == "right") return Side::Right;
    if (s == "left") return Side::Left;
    throw std::invalid_argument(context + ": unknown side '" + s + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double field_to_double(const std::string& s, const std::string& context) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(context + ": bad number '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument(context + ": bad number '" + s + "'");
    return out;
}

} // namespace

std::vector<ResultRow> run_table1(const ExperimentConfig& config) {
    if (config.model != "heston") {
        throw std::invalid_argument("table1 requires model = heston");
    }
    const HestonParams base = heston_from_config(config);
    const McConfig mc = mc_from_config(config);

    struct Scenario {
        std::string label;
        HestonParams params;
    };
    std::vector<Scenario> scenarios;
    for (double kappa : {0.3, 0.4, 0.5}) {
        HestonParams p = base;
        p.kappa = kappa;
        scenarios.push_back({"kappa=" + format_g9(kappa), p});
    }
    for (double theta : {0.3, 0.4, 0.5}) {
        HestonParams p = base;
        p.theta = theta;
        scenarios.push_back({"theta=" + format_g9(theta), p});
    }
    for (double xi : {0.1, 0.15, 0.2}) {
        HestonParams p = base;
        p.xi = xi;
        scenarios.push_back({"xi=" + format_g9(xi), p});
    }

    std::vector<ResultRow> rows;
    rows.reserve(scenarios.size() * 2);
    for (const Scenario& scenario : scenarios) {
        const auto start = std::chrono::steady_clock::now();
        const PathSet paths = simulate(scenario.params, config.horizon, mc, config.mc.threads);
        const ChainPricer chain(paths);
        for (Side side : {Side::Right, Side::Left}) {
            const auto& block = side == Side::Right ? config.right : config.left;
            const PriceInterval interval(block.lower, block.upper);
            const McEstimate direct = mc_expected_uil(paths, side, interval);
            const StrikeGrid grid = StrikeGrid::uniform(interval, config.quadrature.strikes);
            const StrikePricer pricer = side == Side::Right
                                            ? StrikePricer{[&](double k) { return chain.call_mean(k); }}
                                            : StrikePricer{[&](double k) { return chain.put_mean(k); }};
            const double replication = replicate_expected_uil(side, interval, pricer, grid);
            const double ratio = std::abs(replication - direct.value) / std::abs(direct.value);
            const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
            rows.push_back(ResultRow{scenario.label, side, snap_g9(direct.value),
                                     snap_g9(direct.std_error), snap_g9(replication),
                                     snap_g9(ratio), elapsed.count()});
        }
    }
    return rows;
}

std::string table1_csv(const std::vector<ResultRow>& rows) {
    std::string out = "scenario,side,direct,direct_se,replication,error_ratio\n";
    for (const ResultRow& r : rows) {
        out += r.scenario + "," + side_field(r.side) + "," + format_g9(r.direct) + "," +
               format_g9(r.direct_se) + "," + format_g9(r.replication) + "," +
               format_g9(r.error_ratio) + "\n";
    }
    return out;
}

std::vector<ResultRow> parse_table1_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) continue;  // header
        if (line.empty()) continue;
        const std::string context = "table1 csv line " + std::to_string(line_no);
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw std::invalid_argument(context + ": expected 6 fields");
        rows.push_back(ResultRow{f[0], parse_side(f[1], context), field_to_double(f[2], context),
                                 field_to_double(f[3], context), field_to_double(f[4], context),
                                 field_to_double(f[5], context), 0.0});
    }
    return rows;
}

std::vector<IlRow> run_il(const ExperimentConfig& config) {
    if (config.il_exits.empty()) {
        throw std::invalid_argument("il requires at least one exit price (il.exits or --exit)");
    }
    std::vector<IlRow> rows;
    for (Side side : {Side::Right, Side::Left}) {
        const auto& block = side == Side::Right ? config.right : config.left;
        const PriceInterval interval(block.lower, block.upper);
        const Position position(block.liquidity, interval, block.entry_price, side);
        for (double exit_price : config.il_exits) {
            const TokenAmounts holdings = holdings_at_exit(position, exit_price);
            rows.push_back(IlRow{side, snap_g9(interval.lower), snap_g9(interval.upper),
                                 snap_g9(block.liquidity), snap_g9(block.entry_price),
                                 snap_g9(exit_price), snap_g9(holdings.x), snap_g9(holdings.y),
                                 snap_g9(impermanent_loss(position, exit_price)),
                                 snap_g9(uil(side, interval, exit_price)),
                                 snap_g9(average_sell_price(interval))});
        }
    }
    return rows;
}

std::string il_csv(const std::vector<IlRow>& rows) {
    std::string out =
        "side,lower,upper,liquidity,entry_price,exit_price,exit_x,exit_y,"
        "impermanent_loss,uil,average_sell_price\n";
    for (const IlRow& r : rows) {
        out += side_field(r.side) + "," + format_g9(r.lower) + "," + format_g9(r.upper) + "," +
               format_g9(r.liquidity) + "," + format_g9(r.entry_price) + "," +
               format_g9(r.exit_price) + "," + format_g9(r.exit_x) + "," + format_g9(r.exit_y) +
               "," + format_g9(r.il) + "," + format_g9(r.uil_value) + "," +
               format_g9(r.avg_sell_price) + "\n";
    }
    return out;
}

std::vector<IlRow> parse_il_csv(std::istream& in) {
    std::vector<IlRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) continue;
        if (line.empty()) continue;
        const std::string context = "il csv line " + std::to_string(line_no);
        const auto f = split_csv_line(line);
        if (f.size() != 11) throw std::invalid_argument(context + ": expected 11 fields");
        IlRow row;
        row.side = parse_side(f[0], context);
        row.lower = field_to_double(f[1], context);
        row.upper = field_to_double(f[2], context);
        row.liquidity = field_to_double(f[3], context);
        row.entry_price = field_to_double(f[4], context);
        row.exit_price = field_to_double(f[5], context);
        row.exit_x = field_to_double(f[6], context);
        row.exit_y = field_to_double(f[7], context);
        row.il = field_to_double(f[8], context);
        row.uil_value = field_to_double(f[9], context);
        row.avg_sell_price = field_to_double(f[10], context);
        rows.push_back(row);
    }
    return rows;
}

std::vector<Figure1Row> run_figure1(const ExperimentConfig& config) {
    if (config.model != "gbm") {
        throw std::invalid_argument("figure1 requires model = gbm");
    }
    const PriceInterval right(config.right.lower, config.right.upper);
    const PriceInterval left(config.left.lower, config.left.upper);
    const double spot = config.gbm.spot;

    std::vector<Figure1Row> rows;
    constexpr int kPoints = 50;
    for (int i = 0; i < kPoints; ++i) {
        const double sigma = 0.05 + (1.5 - 0.05) * double(i) / double(kPoints - 1);
        const GbmParams params(sigma, config.horizon, spot);
        rows.push_back(Figure1Row{"sigma", snap_g9(sigma), snap_g9(config.horizon),
                                  snap_g9(expected_uil_gbm(Side::Right, right, params)),
                                  snap_g9(expected_uil_gbm(Side::Left, left, params))});
    }
    for (int i = 0; i < kPoints; ++i) {
        const double horizon = (1.0 / kPoints) * double(i + 1);
        const GbmParams params(config.gbm.sigma, horizon, spot);
        rows.push_back(Figure1Row{"horizon", snap_g9(config.gbm.sigma), snap_g9(horizon),
                                  snap_g9(expected_uil_gbm(Side::Right, right, params)),
                                  snap_g9(expected_uil_gbm(Side::Left, left, params))});
    }
    return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
    std::string out = "sweep,sigma,horizon,expected_uil_right,expected_uil_left\n";
    for (const Figure1Row& r : rows) {
        out += r.sweep + "," + format_g9(r.sigma) + "," + format_g9(r.horizon) + "," +
               format_g9(r.right_value) + "," + format_g9(r.left_value) + "\n";
    }
    return out;
}

HedgeReport run_hedge(const ExperimentConfig& config, const std::vector<OptionQuote>& chain) {
    const Side side = config.hedge_side == "right" ? Side::Right : Side::Left;
    const auto& block = side == Side::Right ? config.right : config.left;
    const PriceInterval interval(block.lower, block.upper);

    HedgeReport report{HedgePortfolio{{}, side, interval, 0.0}, {}, 0.0, 0.0};
    report.portfolio = build_hedge_portfolio(side, interval, chain, config.horizon,
                                             config.hedge_maturity_tol, &report.warnings);
    report.cost = report.portfolio.cost();

    if (config.model == "gbm") {
        const GbmParams params(config.gbm.sigma, config.horizon, config.gbm.spot);
        report.model_expected_uil = expected_uil_gbm(side, interval, params);
    } else {
        const PathSet paths =
            simulate(heston_from_config(config), config.horizon, mc_from_config(config),
                     config.mc.threads);
        report.model_expected_uil = mc_expected_uil(paths, side, interval).value;
    }
    return report;
}

std::string hedge_csv(const HedgeReport& report) {
    std::string out = "kind,strike,maturity_years,price,quantity,cost\n";
    for (const HedgeLeg& leg : report.portfolio.legs) {
        out += std::string(to_string(leg.quote.kind)) + "," + format_g9(leg.quote.strike) + "," +
               format_g9(leg.quote.maturity) + "," + format_g9(leg.quote.price) + "," +
               format_g9(leg.quantity) + "," + format_g9(leg.quantity * leg.quote.price) + "\n";
    }
    return out;
}

std::string hedge_summary(const HedgeReport& report) {
    std::string out;
    for (const std::string& w : report.warnings) out += "warning: " + w + "\n";
    out += "legs: " + std::to_string(report.portfolio.legs.size()) + "\n";
    out += "portfolio cost: " + format_g9(report.cost) + "\n";
    out += "model -E[UIL]: " + format_g9(-report.model_expected_uil) + "\n";
    out += "cost vs -E[UIL] gap: " + format_g9(report.cost + report.model_expected_uil) + "\n";
    out += "quadrature residual bound: " + format_g9(report.portfolio.residual_bound) + "\n";
    return out;
}

std::vector<OptionQuote> parse_chain_csv(std::istream& in, const std::string& name) {
    std::vector<OptionQuote> chain;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string context = name + ":" + std::to_string(line_no);
        if (line_no == 1) {
            if (line != "kind,strike,maturity_years,price") {
                throw std::invalid_argument(context +
                                            ": expected header 'kind,strike,maturity_years,price'");
            }
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 4) throw std::invalid_argument(context + ": expected 4 fields");
        std::string kind = f[0];
        for (char& ch : kind) ch = char(std::tolower(static_cast<unsigned char>(ch)));
        OptionKind parsed_kind;
        if (kind == "call") {
            parsed_kind = OptionKind::Call;
        } else if (kind == "put") {
            parsed_kind = OptionKind::Put;
        } else {
            throw std::invalid_argument(context + ": kind must be 'call' or 'put', got '" + f[0] + "'");
        }
        const double strike = field_to_double(f[1], context);
        if (!(strike > 0.0)) throw std::invalid_argument(context + ": strike must be positive");
        const double maturity = field_to_double(f[2], context);
        if (!(maturity > 0.0)) throw std::invalid_argument(context + ": maturity must be positive");
        chain.push_back(OptionQuote{parsed_kind, strike, maturity, field_to_double(f[3], context)});
    }
    return chain;
}

} // namespace ilhedge
