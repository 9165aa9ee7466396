#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ilhedge {

// Flat key-value experiment configuration. Keys use dotted sections
// (e.g. "heston.kappa"); command-line flags override file values.
struct ExperimentConfig {
    std::string model{"heston"};  // "gbm" or "heston"
    double horizon{7.0};          // years

    struct {
        double sigma{0.7};
        double spot{10.0};
    } gbm;

    struct {
        double spot{10.0};
        double v0{0.3};
        double mu{0.1};
        double kappa{0.4};
        double theta{0.4};
        double xi{0.15};
        double rho{-0.3};
    } heston;

    struct PositionBlock {
        double lower;
        double upper;
        double liquidity{1.0};
        double entry_price{10.0};
    };
    PositionBlock right{11.0, 14.0};
    PositionBlock left{6.0, 9.0};

    struct {
        std::uint64_t paths{1'000'000};
        std::uint32_t steps{256};
        std::uint64_t seed{42};
        unsigned threads{0};  // 0 = hardware concurrency
    } mc;

    struct {
        std::size_t strikes{1001};
        bool adaptive_split{false};
    } quadrature;

    std::vector<double> il_exits;       // exit prices for the il command
    std::string hedge_side{"right"};    // which position the hedge covers
    double hedge_maturity_tol{1e-9};    // years
    std::string output;                 // CSV destination; empty = stdout

    // Throws std::invalid_argument listing every violated constraint.
    void validate() const;
};

// Parses a config file; errors carry "file:line:" prefixes.
ExperimentConfig load_config(const std::string& path);

// Applies one key=value pair; context prefixes error messages
// (a "file:line" position or a flag name).
void apply_key(ExperimentConfig& config, const std::string& key, const std::string& value,
               const std::string& context);

} // namespace ilhedge
