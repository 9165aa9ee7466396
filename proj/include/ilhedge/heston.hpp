#pragma once

#include <cstdint>
#include <vector>

#include "ilhedge/payoff.hpp"
#include "ilhedge/types.hpp"

namespace ilhedge {

// Heston dynamics of the pool price:
//   dP = mu P dt + sqrt(v) P dW_P,  dv = kappa (theta - v) dt + xi sqrt(v) dW_v,
// with corr(dW_P, dW_v) = rho.
struct HestonParams {
    double mu{0.0};     // drift
    double kappa{0.0};  // mean-reversion speed
    double theta{0.0};  // long-run variance level
    double xi{0.0};     // vol of vol
    double rho{0.0};    // correlation, in [-1, 1]
    double v0{0.0};     // initial variance
    double spot{0.0};   // P0

    void validate() const;
    bool satisfies_feller() const { return 2.0 * kappa * theta >= xi * xi; }
};

struct McConfig {
    std::uint64_t n_paths{1'000'000};
    std::uint32_t n_steps{256};
    std::uint64_t seed{42};
};

// Terminal prices of one simulation run, with the inputs that produced them.
struct PathSet {
    std::vector<double> terminal_prices;
    McConfig config;
    HestonParams params;
    double horizon{0.0};  // years
};

// Full-truncation log-Euler simulation. Each path's draws are a pure
// counter-based function of (seed, path index), and paths are written to
// disjoint slots, so the result is bit-identical for any thread count.
// n_threads = 0 uses the hardware concurrency.
PathSet simulate(const HestonParams& params, double horizon, const McConfig& config,
                 unsigned n_threads = 0);

struct McEstimate {
    double value;
    double std_error;
};

// Sample mean of the intrinsic payoff at the terminal prices (no
// discounting), summed in path-index order.
McEstimate mc_price(const PathSet& paths, OptionKind kind, double strike);

// Sample mean of the UIL payoff at the terminal prices.
McEstimate mc_expected_uil(const PathSet& paths, Side side, const PriceInterval& interval);

// Sorted view of the terminal prices for pricing whole strike ladders in
// O(log n) per strike via prefix sums.
class ChainPricer {
public:
    explicit ChainPricer(const PathSet& paths);

    double call_mean(double strike) const;  // mean (P - K)+
    double put_mean(double strike) const;   // mean (K - P)+

private:
    std::vector<double> sorted_;
    std::vector<double> prefix_;  // prefix_[i] = sum of sorted_[0..i)
};

} // namespace ilhedge
