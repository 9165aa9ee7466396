#pragma once

#include <functional>
#include <span>
#include <stdexcept>

#include "ilhedge/payoff.hpp"
#include "ilhedge/types.hpp"

namespace ilhedge {

// Zero-drift, zero-rate lognormal model of the pool price at the horizon.
struct GbmParams {
    double sigma;    // annualized volatility
    double horizon;  // years
    double spot;     // P0

    GbmParams(double sigma_, double horizon_, double spot_)
        : sigma(sigma_), horizon(horizon_), spot(spot_) {
        if (!(sigma > 0.0) || !(horizon > 0.0) || !(spot > 0.0)) {
            throw std::domain_error("GbmParams: sigma, horizon and spot must be positive");
        }
    }
};

// Standard normal CDF via erfc; absolute accuracy well below 1e-14.
double normal_cdf(double z);
double normal_pdf(double z);

// d-term for strike K: [ln(spot/K) - sigma^2 t/2] / (sigma sqrt(t)).
double log_moneyness_d(const GbmParams& params, double strike);

// The four moneyness terms of a paired right/left band configuration.
struct MoneynessTerms {
    double d_l, d_u;  // right band edges
    double q_l, q_u;  // left band edges

    static MoneynessTerms from(const GbmParams& params, const PriceInterval& right,
                               const PriceInterval& left);
};

// Vanilla prices and deltas at zero rate.
double bs_call(const GbmParams& params, double strike);
double bs_put(const GbmParams& params, double strike);
double bs_call_delta(const GbmParams& params, double strike);
double bs_put_delta(const GbmParams& params, double strike);

// Square-root payoff prices: E[(sqrt(P_t) - sqrt(K))+] and its put mirror.
double sqrt_call(const GbmParams& params, double strike);
double sqrt_put(const GbmParams& params, double strike);

// Closed-form price of one replication leg (weight included).
double price_leg(const GbmParams& params, const OptionLeg& leg);

// Closed-form E[UIL] for the requested side.
double expected_uil_gbm(Side side, const PriceInterval& interval, const GbmParams& params);

// Raised when the quadrature cannot reach its target accuracy.
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
    double achieved{0.0};
};

// Integrates payoff(P_t) against the terminal lognormal density by adaptive
// Gauss-Kronrod over log-price in +-10 standard deviations. Breakpoints are
// prices where the payoff has a kink; the integration is split there so each
// segment is smooth. Tail mass beyond 10 sigma is below 1e-23 of the density,
// negligible for payoffs of at most linear growth.
double lognormal_quadrature(const std::function<double(double)>& payoff,
                            const GbmParams& params,
                            std::span<const double> breakpoints = {},
                            double* error_estimate = nullptr);

} // namespace ilhedge
