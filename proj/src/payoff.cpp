#include "ilhedge/payoff.hpp"

#include <cmath>
#include <stdexcept>

namespace ilhedge {

const char* to_string(OptionKind kind) {
    switch (kind) {
        case OptionKind::Call: return "call";
        case OptionKind::Put: return "put";
        case OptionKind::SqrtCall: return "sqrt_call";
        case OptionKind::SqrtPut: return "sqrt_put";
    }
    return "?";
}

double intrinsic(OptionKind kind, double strike, double price) {
    if (!(strike > 0.0)) throw std::domain_error("intrinsic: strike must be positive");
    if (!(price > 0.0)) throw std::domain_error("intrinsic: price must be positive");
    switch (kind) {
        case OptionKind::Call: return price > strike ? price - strike : 0.0;
        case OptionKind::Put: return strike > price ? strike - price : 0.0;
        case OptionKind::SqrtCall: {
            const double d = std::sqrt(price) - std::sqrt(strike);
            return d > 0.0 ? d : 0.0;
        }
        case OptionKind::SqrtPut: {
            const double d = std::sqrt(strike) - std::sqrt(price);
            return d > 0.0 ? d : 0.0;
        }
    }
    return 0.0;
}

double uil(Side side, const PriceInterval& interval, double exit_price) {
    if (!(exit_price > 0.0)) throw std::domain_error("uil: exit price must be positive");
    const double p = exit_price;
    if (side == Side::Right) {
        if (p <= interval.lower) return 0.0;
        const double sqrt_l = std::sqrt(interval.lower);
        if (p <= interval.upper) {
            return 2.0 * std::sqrt(p) - p / sqrt_l - sqrt_l;
        }
        const double sqrt_u = std::sqrt(interval.upper);
        return sqrt_u - sqrt_l - (1.0 / sqrt_l - 1.0 / sqrt_u) * p;
    }
    if (p >= interval.upper) return 0.0;
    const double sqrt_u = std::sqrt(interval.upper);
    if (p >= interval.lower) {
        return 2.0 * std::sqrt(p) - p / sqrt_u - sqrt_u;
    }
    const double sqrt_l = std::sqrt(interval.lower);
    return (1.0 / sqrt_l - 1.0 / sqrt_u) * p - sqrt_u + sqrt_l;
}

std::vector<OptionLeg> decompose(Side side, const PriceInterval& interval) {
    const double lower = interval.lower;
    const double upper = interval.upper;
    if (side == Side::Right) {
        return {OptionLeg{OptionKind::SqrtCall, lower, 2.0},
                OptionLeg{OptionKind::SqrtCall, upper, -2.0},
                OptionLeg{OptionKind::Call, lower, -1.0 / std::sqrt(lower)},
                OptionLeg{OptionKind::Call, upper, 1.0 / std::sqrt(upper)}};
    }
    return {OptionLeg{OptionKind::SqrtPut, lower, 2.0},
            OptionLeg{OptionKind::SqrtPut, upper, -2.0},
            OptionLeg{OptionKind::Put, lower, -1.0 / std::sqrt(lower)},
            OptionLeg{OptionKind::Put, upper, 1.0 / std::sqrt(upper)}};
}

double evaluate_legs(const std::vector<OptionLeg>& legs, double price) {
    double total = 0.0;
    for (const OptionLeg& leg : legs) {
        total += leg.weight * intrinsic(leg.kind, leg.strike, price);
    }
    return total;
}

} // namespace ilhedge
