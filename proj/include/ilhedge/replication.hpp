#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ilhedge/payoff.hpp"
#include "ilhedge/types.hpp"

namespace ilhedge {

// Strikes and quadrature weights for the strike-space integrals. Weights are
// trapezoidal cell widths: their sum equals the interval width.
struct StrikeGrid {
    std::vector<double> strikes;
    std::vector<double> weights;

    // Uniform grid of n points over the interval, trapezoid weights.
    static StrikeGrid uniform(const PriceInterval& interval, std::size_t n_points);

    // Uniform grid with one extra knot inserted (used to split the grid at a
    // payoff kink); weights are trapezoidal on the merged non-uniform grid.
    static StrikeGrid uniform_with_knot(const PriceInterval& interval, std::size_t n_points,
                                        double knot);

    // Grid from arbitrary strikes inside the interval; weights are midpoint
    // (Voronoi) cell widths clipped to the interval.
    static StrikeGrid from_strikes(const PriceInterval& interval, std::vector<double> strikes);
};

// A vanilla quote from an option chain. Prices below intrinsic are not
// rejected here; chain validation flags them instead.
struct OptionQuote {
    OptionKind kind;  // Call or Put
    double strike;
    double maturity;  // years
    double price;
};

struct HedgeLeg {
    OptionQuote quote;
    double quantity;  // always >= 0: the hedge is long-only
};

// Long option portfolio approximating -E[UIL] over the interval.
struct HedgePortfolio {
    std::vector<HedgeLeg> legs;
    Side side;
    PriceInterval interval;
    double residual_bound;  // quadrature-coarseness estimate of the cost error

    double cost() const;
    double intrinsic_payoff(double price) const;
};

// No chain quotes usable for the requested interval.
struct UnhedgeableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using StrikePricer = std::function<double(double)>;
// strike -> (call price, put price)
using CallPutPricer = std::function<std::pair<double, double>(double)>;

struct CarrMadanResult {
    double value;
    double error_bound;  // quadrature + tail truncation estimate
};

// Value of a twice differentiable payoff f under the pricer's measure:
//   f(x*) + f'(x*) (E[x] - x*)
//   + integral_0^x* f''(K) P(K) dK + integral_x*^inf f''(K) C(K) dK,
// with E[x] read off put-call parity at the anchor.
CarrMadanResult carr_madan_replicate(const std::function<double(double)>& second_derivative,
                                     double anchor,
                                     std::pair<double, double> value_and_slope_at_anchor,
                                     const CallPutPricer& pricer);

// Right side of the square-root payoff identities, with the inner
// K^(-3/2) integral evaluated in closed form:
//   Call: 1/2 Khat^(-1/2) (x - Khat)+ - 1/4 integral_Khat^inf K^(-3/2) (x - K)+ dK
//   Put:  1/2 Khat^(-1/2) (Khat - x)+ + 1/4 integral_0^Khat K^(-3/2) (K - x)+ dK
double sqrt_payoff_identity_rhs(double x, double k_hat, OptionKind side);

// Strike-space replication of E[UIL]:
//   -1/2 sum_i w_i K_i^(-3/2) pricer(K_i),
// where the pricer quotes calls for the right side and puts for the left.
double replicate_expected_uil(Side side, const PriceInterval& interval,
                              const StrikePricer& pricer, const StrikeGrid& grid);

// Same quadrature applied to option deltas: d E[UIL] / d spot.
double uil_delta(Side side, const PriceInterval& interval, const StrikePricer& delta_pricer,
                 const StrikeGrid& grid);

// Builds the discrete long-option hedge from a market chain. Quotes of the
// wrong kind, wrong maturity (beyond maturity_tol) or outside the interval
// are ignored; negative prices and duplicate strikes are dropped with a
// warning. Throws UnhedgeableError when nothing usable remains.
HedgePortfolio build_hedge_portfolio(Side side, const PriceInterval& interval,
                                     const std::vector<OptionQuote>& chain, double maturity,
                                     double maturity_tol = 0.0,
                                     std::vector<std::string>* warnings = nullptr);

} // namespace ilhedge
