#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ilhedge/gbm.hpp"
#include "ilhedge/payoff.hpp"

using namespace ilhedge;

namespace {

// High-precision reference CDF, independent of erfc: Marsaglia's Taylor
// series in the bulk, the Mills-ratio continued fraction in the tails.
long double reference_cdf(long double z) {
    if (z < 0.0L) return 1.0L - reference_cdf(-z);
    const long double pdf =
        std::exp(-0.5L * z * z) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    if (z >= 3.0L) {
        long double cf = 0.0L;
        for (int k = 150; k >= 1; --k) cf = static_cast<long double>(k) / (z + cf);
        return 1.0L - pdf / (z + cf);
    }
    long double term = z;
    long double sum = z;
    for (int k = 1; k < 500; ++k) {
        term *= z * z / static_cast<long double>(2 * k + 1);
        sum += term;
        if (term < 1e-25L * sum) break;
    }
    return 0.5L + pdf * sum;
}

const GbmParams fig_params{0.7, 30.0 / 365.0, 10.0};

} // namespace

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(-8.0) < 1e-15);
    CHECK(normal_cdf(8.0) > 1.0 - 1e-15);
    // two-sided 97.5% quantile
    CHECK(normal_cdf(1.959964) == doctest::Approx(0.97500000090355760).epsilon(1e-12));

    SUBCASE("symmetry") {
        for (double z = -6.0; z <= 6.0; z += 0.37) {
            CHECK(normal_cdf(-z) == doctest::Approx(1.0 - normal_cdf(z)).epsilon(1e-14));
        }
    }
    SUBCASE("matches series/continued-fraction reference") {
        for (double z = -8.0; z <= 8.0; z += 0.0625) {
            const double ref = static_cast<double>(reference_cdf(static_cast<long double>(z)));
            CHECK(std::abs(normal_cdf(z) - ref) <= 1e-14);
        }
    }
    SUBCASE("monotone") {
        double prev = 0.0;
        for (double z = -10.0; z <= 10.0; z += 0.01) {
            const double cur = normal_cdf(z);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("vanilla prices at zero rate") {
    SUBCASE("zero-volatility limit is the forward intrinsic") {
        const GbmParams tiny(1e-10, 0.1, 10.0);
        CHECK(bs_call(tiny, 8.0) == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(bs_call(tiny, 12.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(bs_put(tiny, 12.0) == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("vanishing strike frees the call") {
        CHECK(bs_call(fig_params, 1e-10) == doctest::Approx(10.0).epsilon(1e-10));
    }
    SUBCASE("frozen value and quadrature oracle") {
        CHECK(bs_call(fig_params, 11.0) == doctest::Approx(0.43174315898374119).epsilon(1e-12));
        const double breakpoints[] = {11.0};
        const double quad = lognormal_quadrature(
            [](double p) { return p > 11.0 ? p - 11.0 : 0.0; }, fig_params, breakpoints);
        CHECK(std::abs(bs_call(fig_params, 11.0) - quad) <= 1e-10 * quad);
    }
    SUBCASE("parity") {
        for (double k : {5.0, 10.0, 15.0}) {
            CHECK(bs_call(fig_params, k) - bs_put(fig_params, k) ==
                  doctest::Approx(10.0 - k).epsilon(1e-13));
        }
    }
    SUBCASE("delta matches bumped price") {
        const double h = 1e-5;
        for (double k : {9.0, 11.0, 14.0}) {
            const GbmParams up(0.7, 30.0 / 365.0, 10.0 + h);
            const GbmParams dn(0.7, 30.0 / 365.0, 10.0 - h);
            const double fd = (bs_call(up, k) - bs_call(dn, k)) / (2.0 * h);
            CHECK(bs_call_delta(fig_params, k) == doctest::Approx(fd).epsilon(1e-7));
            CHECK(bs_put_delta(fig_params, k) ==
                  doctest::Approx(bs_call_delta(fig_params, k) - 1.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("square-root payoff prices") {
    SUBCASE("zero-volatility limit") {
        const GbmParams tiny(1e-10, 0.1, 9.0);
        CHECK(sqrt_call(tiny, 4.0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sqrt_put(tiny, 16.0) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("frozen value and quadrature oracle") {
        CHECK(sqrt_call(fig_params, 11.0) == doctest::Approx(0.061600054180615691).epsilon(1e-12));
        const double breakpoints[] = {11.0};
        const double quad = lognormal_quadrature(
            [](double p) { return intrinsic(OptionKind::SqrtCall, 11.0, p); }, fig_params,
            breakpoints);
        CHECK(std::abs(sqrt_call(fig_params, 11.0) - quad) <= 1e-10 * quad);
        const double quad_put = lognormal_quadrature(
            [](double p) { return intrinsic(OptionKind::SqrtPut, 11.0, p); }, fig_params,
            breakpoints);
        CHECK(sqrt_put(fig_params, 11.0) == doctest::Approx(quad_put).epsilon(1e-10));
    }
    SUBCASE("sqrt parity against E[sqrt(P)]") {
        const double expected_sqrt_p =
            std::sqrt(10.0) * std::exp(-0.7 * 0.7 * (30.0 / 365.0) / 8.0);
        CHECK(expected_sqrt_p == doctest::Approx(3.1463979793392041).epsilon(1e-14));
        for (double k : {6.0, 10.0, 13.0}) {
            CHECK(sqrt_call(fig_params, k) - sqrt_put(fig_params, k) ==
                  doctest::Approx(expected_sqrt_p - std::sqrt(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("moneyness terms") {
    const MoneynessTerms m =
        MoneynessTerms::from(fig_params, PriceInterval(11.0, 12.0), PriceInterval(8.0, 9.0));
    const double st = 0.7 * std::sqrt(30.0 / 365.0);
    CHECK(m.d_l == doctest::Approx((std::log(10.0 / 11.0) - 0.5 * st * st) / st).epsilon(1e-14));
    CHECK(m.d_u == doctest::Approx((std::log(10.0 / 12.0) - 0.5 * st * st) / st).epsilon(1e-14));
    CHECK(m.q_l == doctest::Approx((std::log(10.0 / 8.0) - 0.5 * st * st) / st).epsilon(1e-14));
    CHECK(m.q_u == doctest::Approx((std::log(10.0 / 9.0) - 0.5 * st * st) / st).epsilon(1e-14));
}

TEST_CASE("expected UIL closed form") {
    SUBCASE("degenerate band prices to zero") {
        CHECK(expected_uil_gbm(Side::Right, PriceInterval(11.0, 11.0), fig_params) == 0.0);
        CHECK(expected_uil_gbm(Side::Left, PriceInterval(8.0, 8.0), fig_params) == 0.0);
    }
    SUBCASE("frozen values and quadrature oracle") {
        const PriceInterval right(11.0, 12.0);
        const PriceInterval left(8.0, 9.0);
        const double r = expected_uil_gbm(Side::Right, right, fig_params);
        const double l = expected_uil_gbm(Side::Left, left, fig_params);
        CHECK(r == doctest::Approx(-0.0040569647060697456).epsilon(1e-11));
        CHECK(l == doctest::Approx(-0.0044879823417893917).epsilon(1e-11));
        const double bp_r[] = {11.0, 12.0};
        const double quad_r =
            lognormal_quadrature(UilPayoff{Side::Right, right}, fig_params, bp_r);
        CHECK(std::abs(r - quad_r) <= 1e-9 * std::abs(quad_r));
        const double bp_l[] = {8.0, 9.0};
        const double quad_l = lognormal_quadrature(UilPayoff{Side::Left, left}, fig_params, bp_l);
        CHECK(std::abs(l - quad_l) <= 1e-9 * std::abs(quad_l));
    }
    SUBCASE("equals the priced decomposition legs") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 1000; ++i) {
            const double spot = std::exp(std::log(0.5) + u(rng) * std::log(50.0 / 0.5));
            const GbmParams params(0.1 + 1.1 * u(rng), 0.02 + 0.98 * u(rng), spot);
            const double st = params.sigma * std::sqrt(params.horizon);
            const Side side = i % 2 == 0 ? Side::Right : Side::Left;
            double lower, upper;
            if (side == Side::Right) {
                lower = spot * std::exp(u(rng) * st);
                upper = lower * std::exp((0.1 + 1.9 * u(rng)) * st);
            } else {
                upper = spot * std::exp(-u(rng) * st);
                lower = upper * std::exp(-(0.1 + 1.9 * u(rng)) * st);
            }
            const PriceInterval band(lower, upper);
            double leg_sum = 0.0;
            for (const OptionLeg& leg : decompose(side, band)) leg_sum += price_leg(params, leg);
            const double closed = expected_uil_gbm(side, band, params);
            const double scale = std::max({1.0, std::abs(closed), std::abs(leg_sum)});
            CHECK(std::abs(closed - leg_sum) <= 1e-12 * scale);
        }
    }
    SUBCASE("vanishing volatility and horizon outside the loss region") {
        const GbmParams tiny_vol(1e-8, 0.1, 10.0);
        CHECK(std::abs(expected_uil_gbm(Side::Right, PriceInterval(11.0, 14.0), tiny_vol)) < 1e-12);
        const GbmParams tiny_t(0.7, 1e-10, 10.0);
        CHECK(std::abs(expected_uil_gbm(Side::Left, PriceInterval(6.0, 9.0), tiny_t)) < 1e-12);
    }
}

TEST_CASE("lognormal quadrature") {
    SUBCASE("density normalizes") {
        CHECK(lognormal_quadrature([](double) { return 1.0; }, fig_params) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero drift keeps the mean at spot") {
        CHECK(lognormal_quadrature([](double p) { return p; }, fig_params) ==
              doctest::Approx(10.0).epsilon(1e-12));
    }
    SUBCASE("error estimate is reported") {
        double err = -1.0;
        lognormal_quadrature([](double p) { return p; }, fig_params, {}, &err);
        CHECK(err >= 0.0);
        CHECK(err < 1e-8);
    }
}
