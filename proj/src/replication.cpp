#include "ilhedge/replication.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ilhedge {

namespace {

double inv_k32(double strike) { return 1.0 / (strike * std::sqrt(strike)); }

// Trapezoid weights on an already sorted, strictly increasing grid.
std::vector<double> trapezoid_weights(const std::vector<double>& strikes) {
    const std::size_t n = strikes.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    w[0] = 0.5 * (strikes[1] - strikes[0]);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (strikes[i + 1] - strikes[i - 1]);
    w[n - 1] = 0.5 * (strikes[n - 1] - strikes[n - 2]);
    return w;
}

void check_grid(const PriceInterval& interval, const StrikeGrid& grid) {
    if (grid.strikes.empty()) throw std::domain_error("strike grid is empty");
    if (grid.strikes.size() != grid.weights.size()) {
        throw std::domain_error("strike grid and weights differ in length");
    }
    const double slack = 1e-9 * (1.0 + interval.upper);
    for (double k : grid.strikes) {
        if (k < interval.lower - slack || k > interval.upper + slack) {
            throw std::domain_error("strike grid point " + std::to_string(k) +
                                    " lies outside the interval");
        }
    }
}

double quadrature_sum(const PriceInterval& interval, const StrikePricer& pricer,
                      const StrikeGrid& grid) {
    check_grid(interval, grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.strikes.size(); ++i) {
        acc += grid.weights[i] * inv_k32(grid.strikes[i]) * pricer(grid.strikes[i]);
    }
    return -0.5 * acc;
}

} // namespace

StrikeGrid StrikeGrid::uniform(const PriceInterval& interval, std::size_t n_points) {
    if (interval.degenerate()) return StrikeGrid{{interval.lower}, {0.0}};
    if (n_points < 2) throw std::domain_error("StrikeGrid::uniform: need at least 2 points");
    StrikeGrid grid;
    grid.strikes.resize(n_points);
    const double h = interval.width() / double(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) grid.strikes[i] = interval.lower + h * double(i);
    grid.strikes.back() = interval.upper;
    grid.weights = trapezoid_weights(grid.strikes);
    return grid;
}

StrikeGrid StrikeGrid::uniform_with_knot(const PriceInterval& interval, std::size_t n_points,
                                         double knot) {
    StrikeGrid grid = uniform(interval, n_points);
    if (knot <= interval.lower || knot >= interval.upper) return grid;
    const double h = interval.width() / double(n_points - 1);
    auto at = std::lower_bound(grid.strikes.begin(), grid.strikes.end(), knot);
    // Skip insertion when the knot already sits (nearly) on a grid point.
    if ((at != grid.strikes.end() && *at - knot < 1e-12 * h) ||
        (at != grid.strikes.begin() && knot - *(at - 1) < 1e-12 * h)) {
        return grid;
    }
    grid.strikes.insert(at, knot);
    grid.weights = trapezoid_weights(grid.strikes);
    return grid;
}

StrikeGrid StrikeGrid::from_strikes(const PriceInterval& interval, std::vector<double> strikes) {
    if (strikes.empty()) throw std::domain_error("StrikeGrid::from_strikes: no strikes");
    std::sort(strikes.begin(), strikes.end());
    const std::size_t n = strikes.size();
    std::vector<double> weights(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double cell_lo = i == 0 ? interval.lower : 0.5 * (strikes[i - 1] + strikes[i]);
        const double cell_hi = i + 1 == n ? interval.upper : 0.5 * (strikes[i] + strikes[i + 1]);
        weights[i] = std::max(0.0, std::min(cell_hi, interval.upper) -
                                       std::max(cell_lo, interval.lower));
    }
    return StrikeGrid{std::move(strikes), std::move(weights)};
}

double HedgePortfolio::cost() const {
    double total = 0.0;
    for (const HedgeLeg& leg : legs) total += leg.quantity * leg.quote.price;
    return total;
}

double HedgePortfolio::intrinsic_payoff(double price) const {
    double total = 0.0;
    for (const HedgeLeg& leg : legs) {
        total += leg.quantity * intrinsic(leg.quote.kind, leg.quote.strike, price);
    }
    return total;
}

CarrMadanResult carr_madan_replicate(const std::function<double(double)>& second_derivative,
                                     double anchor,
                                     std::pair<double, double> value_and_slope_at_anchor,
                                     const CallPutPricer& pricer) {
    if (!(anchor > 0.0)) throw std::domain_error("carr_madan_replicate: anchor must be positive");
    const auto [value_at_anchor, slope_at_anchor] = value_and_slope_at_anchor;
    const auto [call_at_anchor, put_at_anchor] = pricer(anchor);
    // Zero-rate parity: E[x] = C(K) - P(K) + K at any strike.
    const double forward = call_at_anchor - put_at_anchor + anchor;

    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err_put = 0.0;
    const double put_wing = gk::integrate(
        [&](double k) { return second_derivative(k) * pricer(k).second; }, 0.0, anchor, 14, 1e-12,
        &err_put);
    double err_call = 0.0;
    const double call_wing = gk::integrate(
        [&](double k) { return second_derivative(k) * pricer(k).first; }, anchor,
        std::numeric_limits<double>::infinity(), 14, 1e-12, &err_call);

    return CarrMadanResult{
        value_at_anchor + slope_at_anchor * (forward - anchor) + put_wing + call_wing,
        err_put + err_call};
}

double sqrt_payoff_identity_rhs(double x, double k_hat, OptionKind side) {
    if (!(x > 0.0) || !(k_hat > 0.0)) {
        throw std::domain_error("sqrt_payoff_identity_rhs: x and k_hat must be positive");
    }
    const double root_k = std::sqrt(k_hat);
    if (side == OptionKind::Call) {
        if (x <= k_hat) return 0.0;
        // integral_khat^x K^(-3/2) (x - K) dK = 2 x / sqrt(khat) + 2 sqrt(khat) - 4 sqrt(x)
        const double inner = 2.0 * x / root_k + 2.0 * root_k - 4.0 * std::sqrt(x);
        return 0.5 * (x - k_hat) / root_k - 0.25 * inner;
    }
    if (side == OptionKind::Put) {
        if (x >= k_hat) return 0.0;
        // integral_x^khat K^(-3/2) (K - x) dK = 2 sqrt(khat) + 2 x / sqrt(khat) - 4 sqrt(x)
        const double inner = 2.0 * root_k + 2.0 * x / root_k - 4.0 * std::sqrt(x);
        return 0.5 * (k_hat - x) / root_k + 0.25 * inner;
    }
    throw std::invalid_argument("sqrt_payoff_identity_rhs: side must be Call or Put");
}

double replicate_expected_uil(Side side, const PriceInterval& interval,
                              const StrikePricer& pricer, const StrikeGrid& grid) {
    (void)side;  // the caller supplies call quotes for Right, put quotes for Left
    return quadrature_sum(interval, pricer, grid);
}

double uil_delta(Side side, const PriceInterval& interval, const StrikePricer& delta_pricer,
                 const StrikeGrid& grid) {
    (void)side;
    return quadrature_sum(interval, delta_pricer, grid);
}

HedgePortfolio build_hedge_portfolio(Side side, const PriceInterval& interval,
                                     const std::vector<OptionQuote>& chain, double maturity,
                                     double maturity_tol,
                                     std::vector<std::string>* warnings) {
    const OptionKind wanted = side == Side::Right ? OptionKind::Call : OptionKind::Put;
    const auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    std::vector<OptionQuote> usable;
    for (const OptionQuote& q : chain) {
        if (q.kind != wanted) continue;
        if (std::abs(q.maturity - maturity) > maturity_tol) continue;
        if (q.strike < interval.lower || q.strike > interval.upper) continue;
        if (q.price < 0.0) {
            warn("excluded negative quote: " + std::string(to_string(q.kind)) + " strike " +
                 std::to_string(q.strike) + " price " + std::to_string(q.price));
            continue;
        }
        usable.push_back(q);
    }
    std::sort(usable.begin(), usable.end(),
              [](const OptionQuote& a, const OptionQuote& b) { return a.strike < b.strike; });
    for (std::size_t i = 1; i < usable.size();) {
        if (usable[i].strike == usable[i - 1].strike) {
            warn("excluded duplicate strike " + std::to_string(usable[i].strike));
            usable.erase(usable.begin() + long(i));
        } else {
            ++i;
        }
    }
    if (usable.empty()) {
        throw UnhedgeableError("unhedgeable interval [" + std::to_string(interval.lower) + ", " +
                               std::to_string(interval.upper) + "]: no usable " +
                               to_string(wanted) + " quotes at maturity " +
                               std::to_string(maturity));
    }

    std::vector<double> strikes;
    strikes.reserve(usable.size());
    for (const OptionQuote& q : usable) strikes.push_back(q.strike);
    const StrikeGrid grid = StrikeGrid::from_strikes(interval, std::move(strikes));

    HedgePortfolio portfolio{{}, side, interval, 0.0};
    portfolio.legs.reserve(usable.size());
    for (std::size_t i = 0; i < usable.size(); ++i) {
        portfolio.legs.push_back(
            HedgeLeg{usable[i], 0.5 * inv_k32(grid.strikes[i]) * grid.weights[i]});
    }

    // Trapezoid-coarseness estimate of the cost error: second differences of
    // g(K) = K^(-3/2) price(K) stand in for g'' h^2; cell error ~ h |d| / 12.
    if (usable.size() >= 3) {
        double bound = 0.0;
        for (std::size_t i = 1; i + 1 < usable.size(); ++i) {
            const double g_prev = inv_k32(usable[i - 1].strike) * usable[i - 1].price;
            const double g_mid = inv_k32(usable[i].strike) * usable[i].price;
            const double g_next = inv_k32(usable[i + 1].strike) * usable[i + 1].price;
            bound += grid.weights[i] * std::abs(g_next - 2.0 * g_mid + g_prev) / 12.0;
        }
        portfolio.residual_bound = 0.5 * bound;
    } else {
        double g_max = 0.0;
        for (const OptionQuote& q : usable) g_max = std::max(g_max, inv_k32(q.strike) * q.price);
        portfolio.residual_bound = 0.5 * interval.width() * g_max;
    }
    return portfolio;
}

} // namespace ilhedge
