#include "ilhedge/heston.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "ilhedge/philox.hpp"

namespace ilhedge {

void HestonParams::validate() const {
    if (kappa < 0.0 || theta < 0.0 || xi < 0.0 || v0 < 0.0) {
        throw std::domain_error("HestonParams: kappa, theta, xi and v0 must be nonnegative");
    }
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw std::domain_error("HestonParams: rho must lie in [-1, 1]");
    }
    if (!(spot > 0.0)) {
        throw std::domain_error("HestonParams: spot must be positive");
    }
}

PathSet simulate(const HestonParams& params, double horizon, const McConfig& config,
                 unsigned n_threads) {
    params.validate();
    if (!(horizon > 0.0)) throw std::domain_error("simulate: horizon must be positive");
    if (config.n_paths < 1 || config.n_steps < 1) {
        throw std::domain_error("simulate: need at least one path and one step");
    }

    const double dt = horizon / config.n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const double rho = params.rho;
    const double rho_perp = std::sqrt(1.0 - rho * rho);
    const double log_spot = std::log(params.spot);

    std::vector<double> terminal(config.n_paths);
    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            double log_p = log_spot;
            double v = params.v0;
            for (std::uint32_t k = 0; k < config.n_steps; ++k) {
                const NormalPair z = normal_pair(config.seed, i, k);
                const double z_var = rho * z.z0 + rho_perp * z.z1;
                const double v_plus = v > 0.0 ? v : 0.0;  // full truncation
                const double vol_dt = std::sqrt(v_plus) * sqrt_dt;
                log_p += (params.mu - 0.5 * v_plus) * dt + vol_dt * z.z0;
                v += params.kappa * (params.theta - v_plus) * dt + params.xi * vol_dt * z_var;
            }
            terminal[i] = std::exp(log_p);
        }
    };

    unsigned workers = n_threads != 0 ? n_threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, config.n_paths));
    if (workers <= 1) {
        run_range(0, config.n_paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t chunk = (config.n_paths + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::uint64_t(w) * chunk;
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, config.n_paths);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    return PathSet{std::move(terminal), config, params, horizon};
}

namespace {

McEstimate mean_and_error(const std::vector<double>& samples,
                          const std::function<double(double)>& f) {
    const std::size_t n = samples.size();
    if (n == 0) throw std::domain_error("mc estimate: empty path set");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double s : samples) {
        const double y = f(s);
        sum += y;
        sum_sq += y * y;
    }
    const double mean = sum / double(n);
    if (n == 1) return McEstimate{mean, 0.0};
    const double var = std::max(0.0, (sum_sq - sum * mean) / double(n - 1));
    return McEstimate{mean, std::sqrt(var / double(n))};
}

} // namespace

McEstimate mc_price(const PathSet& paths, OptionKind kind, double strike) {
    if (!(strike > 0.0)) throw std::domain_error("mc_price: strike must be positive");
    return mean_and_error(paths.terminal_prices,
                          [&](double p) { return intrinsic(kind, strike, p); });
}

McEstimate mc_expected_uil(const PathSet& paths, Side side, const PriceInterval& interval) {
    return mean_and_error(paths.terminal_prices,
                          [&](double p) { return uil(side, interval, p); });
}

ChainPricer::ChainPricer(const PathSet& paths) : sorted_(paths.terminal_prices) {
    if (sorted_.empty()) throw std::domain_error("ChainPricer: empty path set");
    std::sort(sorted_.begin(), sorted_.end());
    prefix_.resize(sorted_.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted_.size(); ++i) prefix_[i + 1] = prefix_[i] + sorted_[i];
}

double ChainPricer::call_mean(double strike) const {
    const std::size_t n = sorted_.size();
    const std::size_t i = std::upper_bound(sorted_.begin(), sorted_.end(), strike) - sorted_.begin();
    const double above_sum = prefix_[n] - prefix_[i];
    return (above_sum - strike * double(n - i)) / double(n);
}

double ChainPricer::put_mean(double strike) const {
    const std::size_t n = sorted_.size();
    const std::size_t i = std::upper_bound(sorted_.begin(), sorted_.end(), strike) - sorted_.begin();
    return (strike * double(i) - prefix_[i]) / double(n);
}

} // namespace ilhedge
