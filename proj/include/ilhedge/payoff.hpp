#pragma once

#include <vector>

#include "ilhedge/types.hpp"

namespace ilhedge {

// Vanilla calls/puts on the price, plus options on the square-root price:
// SqrtCall pays (sqrt(P) - sqrt(K))+, SqrtPut pays (sqrt(K) - sqrt(P))+.
enum class OptionKind { Call, Put, SqrtCall, SqrtPut };

const char* to_string(OptionKind kind);

// One replication leg: weight times the intrinsic payoff at the strike.
struct OptionLeg {
    OptionKind kind;
    double strike;
    double weight;
};

// Intrinsic payoff of a single option at the given price.
double intrinsic(OptionKind kind, double strike, double price);

// Impermanent loss per unit liquidity as a function of the exit price.
// Zero outside the loss region (below for right side, above for left),
// continuous everywhere, never positive.
double uil(Side side, const PriceInterval& interval, double exit_price);

// Callable wrapper for quadrature and plotting.
struct UilPayoff {
    Side side;
    PriceInterval interval;
    double operator()(double price) const { return uil(side, interval, price); }
};

// Exact four-leg option representation of the UIL payoff. Right side uses
// calls and sqrt-calls struck at the band edges, left side the mirrored puts.
std::vector<OptionLeg> decompose(Side side, const PriceInterval& interval);

// Sum of weight * intrinsic over the legs.
double evaluate_legs(const std::vector<OptionLeg>& legs, double price);

} // namespace ilhedge
