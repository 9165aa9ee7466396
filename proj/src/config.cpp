#include "ilhedge/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ilhedge {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& context, const std::string& message) {
    throw std::invalid_argument(context + ": " + message);
}

double parse_double(const std::string& value, const std::string& context) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        fail(context, "expected a number, got '" + value + "'");
    }
    if (used != value.size()) fail(context, "trailing characters in number '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
    if (!value.empty() && value[0] == '-') fail(context, "expected a nonnegative integer, got '" + value + "'");
    std::size_t used = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(value, &used);
    } catch (const std::exception&) {
        fail(context, "expected an integer, got '" + value + "'");
    }
    if (used != value.size()) fail(context, "trailing characters in integer '" + value + "'");
    return out;
}

bool parse_bool(const std::string& value, const std::string& context) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail(context, "expected true/false, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& value, const std::string& context) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(context, "empty entry in list '" + value + "'");
        out.push_back(parse_double(item, context));
    }
    if (out.empty()) fail(context, "empty list");
    return out;
}

} // namespace

void apply_key(ExperimentConfig& c, const std::string& key, const std::string& value,
               const std::string& context) {
    if (key == "model") {
        if (value != "gbm" && value != "heston") fail(context, "model must be 'gbm' or 'heston'");
        c.model = value;
    } else if (key == "horizon") {
        c.horizon = parse_double(value, context);
    } else if (key == "gbm.sigma") {
        c.gbm.sigma = parse_double(value, context);
    } else if (key == "gbm.spot") {
        c.gbm.spot = parse_double(value, context);
    } else if (key == "heston.spot") {
        c.heston.spot = parse_double(value, context);
    } else if (key == "heston.v0") {
        c.heston.v0 = parse_double(value, context);
    } else if (key == "heston.mu") {
        c.heston.mu = parse_double(value, context);
    } else if (key == "heston.kappa") {
        c.heston.kappa = parse_double(value, context);
    } else if (key == "heston.theta") {
        c.heston.theta = parse_double(value, context);
    } else if (key == "heston.xi") {
        c.heston.xi = parse_double(value, context);
    } else if (key == "heston.rho") {
        c.heston.rho = parse_double(value, context);
    } else if (key == "position.right.lower") {
        c.right.lower = parse_double(value, context);
    } else if (key == "position.right.upper") {
        c.right.upper = parse_double(value, context);
    } else if (key == "position.right.liquidity") {
        c.right.liquidity = parse_double(value, context);
    } else if (key == "position.right.entry_price") {
        c.right.entry_price = parse_double(value, context);
    } else if (key == "position.left.lower") {
        c.left.lower = parse_double(value, context);
    } else if (key == "position.left.upper") {
        c.left.upper = parse_double(value, context);
    } else if (key == "position.left.liquidity") {
        c.left.liquidity = parse_double(value, context);
    } else if (key == "position.left.entry_price") {
        c.left.entry_price = parse_double(value, context);
    } else if (key == "mc.paths") {
        c.mc.paths = parse_u64(value, context);
    } else if (key == "mc.steps") {
        c.mc.steps = static_cast<std::uint32_t>(parse_u64(value, context));
    } else if (key == "mc.seed") {
        c.mc.seed = parse_u64(value, context);
    } else if (key == "mc.threads") {
        c.mc.threads = static_cast<unsigned>(parse_u64(value, context));
    } else if (key == "quadrature.strikes") {
        c.quadrature.strikes = static_cast<std::size_t>(parse_u64(value, context));
    } else if (key == "quadrature.adaptive_split") {
        c.quadrature.adaptive_split = parse_bool(value, context);
    } else if (key == "il.exits") {
        c.il_exits = parse_double_list(value, context);
    } else if (key == "hedge.side") {
        if (value != "right" && value != "left") fail(context, "hedge.side must be 'right' or 'left'");
        c.hedge_side = value;
    } else if (key == "hedge.maturity_tolerance") {
        c.hedge_maturity_tol = parse_double(value, context);
    } else if (key == "output") {
        c.output = value;
    } else {
        fail(context, "unknown key '" + key + "'");
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open config file");
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string context = path + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(context, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(context, "empty key");
        if (value.empty()) fail(context, "empty value for key '" + key + "'");
        apply_key(config, key, value, context);
    }
    return config;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    const auto require = [&](bool ok, const std::string& message) {
        if (!ok) problems.push_back(message);
    };

    require(model == "gbm" || model == "heston", "model must be 'gbm' or 'heston'");
    require(horizon > 0.0, "horizon must be positive");
    require(gbm.sigma > 0.0, "gbm.sigma must be positive");
    require(gbm.spot > 0.0, "gbm.spot must be positive");
    require(heston.spot > 0.0, "heston.spot must be positive");
    require(heston.v0 >= 0.0, "heston.v0 must be nonnegative");
    require(heston.kappa >= 0.0, "heston.kappa must be nonnegative");
    require(heston.theta >= 0.0, "heston.theta must be nonnegative");
    require(heston.xi >= 0.0, "heston.xi must be nonnegative");
    require(heston.rho >= -1.0 && heston.rho <= 1.0, "heston.rho must lie in [-1, 1]");

    const auto check_position = [&](const PositionBlock& p, const std::string& name, bool is_right) {
        require(p.lower > 0.0, name + ".lower must be positive");
        require(p.upper >= p.lower, name + ".lower must not exceed " + name + ".upper");
        require(p.liquidity > 0.0, name + ".liquidity must be positive");
        require(p.entry_price > 0.0, name + ".entry_price must be positive");
        if (p.lower > 0.0 && p.upper >= p.lower && p.entry_price > 0.0) {
            if (is_right) {
                require(p.entry_price <= p.lower, name + ".entry_price must not exceed " + name + ".lower");
            } else {
                require(p.entry_price >= p.upper, name + ".entry_price must not fall below " + name + ".upper");
            }
        }
    };
    check_position(right, "position.right", true);
    check_position(left, "position.left", false);

    require(mc.paths >= 1, "mc.paths must be at least 1");
    require(mc.steps >= 1, "mc.steps must be at least 1");
    require(quadrature.strikes >= 2, "quadrature.strikes must be at least 2");
    for (double e : il_exits) require(e > 0.0, "il.exits entries must be positive");
    require(hedge_side == "right" || hedge_side == "left", "hedge.side must be 'right' or 'left'");
    require(hedge_maturity_tol >= 0.0, "hedge.maturity_tolerance must be nonnegative");

    if (!problems.empty()) {
        std::string joined = "invalid configuration:";
        for (const std::string& p : problems) joined += "\n  - " + p;
        throw std::invalid_argument(joined);
    }
}

} // namespace ilhedge
