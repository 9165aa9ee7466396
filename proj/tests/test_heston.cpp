#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "ilhedge/gbm.hpp"
#include "ilhedge/heston.hpp"
#include "ilhedge/philox.hpp"

using namespace ilhedge;

namespace {

// Reference Philox-4x32-10, transcribed independently from the published
// round structure: multiply-high-low on lanes 0/2, xor-fold into 1/3, Weyl
// key schedule between rounds.
void reference_round(std::uint32_t c[4], const std::uint32_t k[2]) {
    const std::uint64_t m0 = std::uint64_t(0xD2511F53u) * c[0];
    const std::uint64_t m1 = std::uint64_t(0xCD9E8D57u) * c[2];
    const std::uint32_t lo0 = std::uint32_t(m0), hi0 = std::uint32_t(m0 >> 32);
    const std::uint32_t lo1 = std::uint32_t(m1), hi1 = std::uint32_t(m1 >> 32);
    std::uint32_t out[4];
    out[0] = hi1 ^ c[1] ^ k[0];
    out[1] = lo1;
    out[2] = hi0 ^ c[3] ^ k[1];
    out[3] = lo0;
    for (int i = 0; i < 4; ++i) c[i] = out[i];
}

std::array<std::uint32_t, 4> reference_philox(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
    std::uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
    std::uint32_t k[2] = {key[0], key[1]};
    for (int round = 0; round < 10; ++round) {
        reference_round(c, k);
        if (round != 9) {
            k[0] += 0x9E3779B9u;
            k[1] += 0xBB67AE85u;
        }
    }
    return {c[0], c[1], c[2], c[3]};
}

const HestonParams gbm_like{0.0, 0.0, 0.09, 0.0, 0.0, 0.09, 10.0};

} // namespace

TEST_CASE("philox block function") {
    SUBCASE("agrees with an independent transcription") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 2000; ++i) {
            const std::array<std::uint32_t, 4> ctr{std::uint32_t(rng()), std::uint32_t(rng()),
                                                   std::uint32_t(rng()), std::uint32_t(rng())};
            const std::array<std::uint32_t, 2> key{std::uint32_t(rng()), std::uint32_t(rng())};
            CHECK(philox4x32(ctr, key) == reference_philox(ctr, key));
        }
    }
    SUBCASE("distinct counters decorrelate") {
        const auto a = philox4x32({0, 0, 0, 0}, {0, 0});
        const auto b = philox4x32({1, 0, 0, 0}, {0, 0});
        CHECK(a != b);
    }
}

TEST_CASE("normal pair stream") {
    SUBCASE("pure function of (seed, path, step)") {
        const NormalPair a = normal_pair(42, 7, 3);
        const NormalPair b = normal_pair(42, 7, 3);
        CHECK(a.z0 == b.z0);
        CHECK(a.z1 == b.z1);
        const NormalPair c = normal_pair(43, 7, 3);
        CHECK(a.z0 != c.z0);
    }
    SUBCASE("moments") {
        const int n = 200'000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const NormalPair z = normal_pair(9, std::uint64_t(i), 0);
            sum += z.z0 + z.z1;
            sum_sq += z.z0 * z.z0 + z.z1 * z.z1;
        }
        const double mean = sum / (2.0 * n);
        const double var = sum_sq / (2.0 * n) - mean * mean;
        CHECK(std::abs(mean) < 3.0 / std::sqrt(2.0 * n));
        CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / (2.0 * n)));
    }
}

TEST_CASE("heston simulation") {
    SUBCASE("parameter validation") {
        HestonParams bad = gbm_like;
        bad.rho = -1.5;
        CHECK_THROWS_AS(bad.validate(), std::domain_error);
        bad = gbm_like;
        bad.v0 = -0.1;
        CHECK_THROWS_AS(bad.validate(), std::domain_error);
        CHECK(HestonParams{0.1, 0.4, 0.4, 0.15, -0.3, 0.3, 10.0}.satisfies_feller());
    }
    SUBCASE("fixed seed reproduces bit-identically") {
        const McConfig config{8, 16, 1234};
        const PathSet a = simulate(gbm_like, 0.5, config);
        const PathSet b = simulate(gbm_like, 0.5, config);
        CHECK(a.terminal_prices == b.terminal_prices);
    }
    SUBCASE("thread count does not change the draw") {
        const McConfig config{5000, 16, 99};
        const PathSet one = simulate(gbm_like, 0.5, config, 1);
        const PathSet four = simulate(gbm_like, 0.5, config, 4);
        CHECK(one.terminal_prices == four.terminal_prices);
    }
    SUBCASE("prices stay positive") {
        const HestonParams rough{0.1, 0.4, 0.4, 0.9, -0.7, 0.3, 10.0};  // Feller violated
        const PathSet paths = simulate(rough, 2.0, McConfig{20'000, 64, 7});
        for (double p : paths.terminal_prices) CHECK(p > 0.0);
    }
    SUBCASE("zero drift is a martingale") {
        const HestonParams params{0.0, 0.4, 0.4, 0.15, -0.3, 0.3, 10.0};
        const PathSet paths = simulate(params, 0.25, McConfig{200'000, 64, 11});
        double sum = 0.0, sum_sq = 0.0;
        for (double p : paths.terminal_prices) {
            sum += p;
            sum_sq += p * p;
        }
        const double n = double(paths.terminal_prices.size());
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq / n - mean * mean) / n);
        CHECK(std::abs(mean - 10.0) < 3.0 * se);
    }
}

TEST_CASE("monte carlo pricing") {
    const PathSet paths = simulate(gbm_like, 0.5, McConfig{200'000, 8, 21});

    SUBCASE("vanishing strike returns the mean price") {
        const McEstimate free_call = mc_price(paths, OptionKind::Call, 1e-12);
        double sum = 0.0;
        for (double p : paths.terminal_prices) sum += p;
        CHECK(free_call.value == doctest::Approx(sum / 200'000.0).epsilon(1e-12));
    }
    SUBCASE("deep out-of-the-money call is worthless") {
        const McEstimate otm = mc_price(paths, OptionKind::Call, 1000.0);
        CHECK(otm.value == 0.0);
        CHECK(otm.std_error == 0.0);
    }
    SUBCASE("reduces to the closed form when vol-of-vol vanishes") {
        const GbmParams gbm(0.3, 0.5, 10.0);
        for (double strike : {9.0, 10.0, 11.0}) {
            const McEstimate mc = mc_price(paths, OptionKind::Call, strike);
            CHECK(std::abs(mc.value - bs_call(gbm, strike)) < 3.0 * mc.std_error);
        }
        const PriceInterval band(11.0, 14.0);
        const McEstimate mc_uil = mc_expected_uil(paths, Side::Right, band);
        CHECK(std::abs(mc_uil.value - expected_uil_gbm(Side::Right, band, gbm)) <
              3.0 * mc_uil.std_error);
    }
    SUBCASE("unreachable band carries no loss") {
        const McEstimate far = mc_expected_uil(paths, Side::Right, PriceInterval(1e6, 2e6));
        CHECK(far.value == 0.0);
    }
    SUBCASE("empty path set is rejected") {
        const PathSet empty{{}, McConfig{1, 1, 0}, gbm_like, 1.0};
        CHECK_THROWS_AS(mc_price(empty, OptionKind::Call, 10.0), std::domain_error);
        CHECK_THROWS_AS(mc_expected_uil(empty, Side::Right, PriceInterval(11.0, 14.0)),
                        std::domain_error);
        CHECK_THROWS_AS(ChainPricer{empty}, std::domain_error);
    }
    SUBCASE("chain pricer matches the direct estimator") {
        const ChainPricer chain(paths);
        for (double strike : {6.0, 9.5, 10.0, 12.0, 20.0}) {
            const double call_ref = mc_price(paths, OptionKind::Call, strike).value;
            const double put_ref = mc_price(paths, OptionKind::Put, strike).value;
            CHECK(chain.call_mean(strike) == doctest::Approx(call_ref).epsilon(1e-10));
            CHECK(chain.put_mean(strike) == doctest::Approx(put_ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("monte carlo error decays at the square-root rate") {
    const GbmParams gbm(0.3, 0.5, 10.0);
    const double truth = bs_call(gbm, 10.0);
    const std::array<std::uint64_t, 4> sizes{1000, 10'000, 100'000, 1'000'000};
    const std::array<int, 4> replicates{16, 16, 16, 4};

    std::array<double, 4> log_rmse{};
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        double mse = 0.0;
        for (int r = 0; r < replicates[s]; ++r) {
            const PathSet paths =
                simulate(gbm_like, 0.5, McConfig{sizes[s], 4, 1000 + std::uint64_t(r)});
            const double err = mc_price(paths, OptionKind::Call, 10.0).value - truth;
            mse += err * err;
        }
        log_rmse[s] = 0.5 * std::log10(mse / replicates[s]);
    }
    // least-squares slope of log-rmse against log-n
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        const double x = std::log10(double(sizes[s]));
        sx += x;
        sy += log_rmse[s];
        sxx += x * x;
        sxy += x * log_rmse[s];
    }
    const double n = double(sizes.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope < -0.4);
    CHECK(slope > -0.6);
}
