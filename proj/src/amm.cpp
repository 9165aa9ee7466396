#include "ilhedge/amm.hpp"

#include <cmath>
#include <stdexcept>

namespace ilhedge {

PoolState pool_from_reserves(double x, double y, double fee_rate) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::domain_error("pool_from_reserves: reserves must be positive");
    }
    return PoolState{std::sqrt(x * y), y / x, fee_rate};
}

Position::Position(double liquidity_, PriceInterval interval_, double entry_price_, Side side_)
    : liquidity(liquidity_), interval(interval_), entry_price(entry_price_), side(side_) {
    if (!(liquidity > 0.0)) {
        throw std::domain_error("Position: liquidity must be positive");
    }
    if (!(entry_price > 0.0)) {
        throw std::domain_error("Position: entry price must be positive");
    }
    if (side == Side::Right && entry_price > interval.lower) {
        throw std::domain_error("Position: right side requires entry_price <= interval.lower");
    }
    if (side == Side::Left && entry_price < interval.upper) {
        throw std::domain_error("Position: left side requires entry_price >= interval.upper");
    }
}

TokenAmounts Position::initial_deposits() const {
    return deposits_for_liquidity(liquidity, interval, entry_price);
}

TokenAmounts reserves_from_state(const PoolState& pool) {
    if (!(pool.price > 0.0)) {
        throw std::domain_error("reserves_from_state: price must be positive");
    }
    const double sqrt_p = std::sqrt(pool.price);
    return TokenAmounts{pool.liquidity / sqrt_p, pool.liquidity * sqrt_p};
}

double swap_out(const PoolState& pool, double dx_in) {
    if (!(dx_in > 0.0)) {
        throw std::domain_error("swap_out: input amount must be positive");
    }
    const TokenAmounts reserves = reserves_from_state(pool);
    if (reserves.x == 0.0 || reserves.y == 0.0) {
        throw std::domain_error("swap_out: pool has zero reserves");
    }
    const double dx_eff = (1.0 - pool.fee_rate) * dx_in;
    return reserves.y * dx_eff / (reserves.x + dx_eff);
}

TokenAmounts deposits_for_liquidity(double delta_l, const PriceInterval& interval,
                                    double current_price) {
    if (delta_l < 0.0) {
        throw std::domain_error("deposits_for_liquidity: liquidity must be nonnegative");
    }
    if (!(current_price > 0.0)) {
        throw std::domain_error("deposits_for_liquidity: price must be positive");
    }
    const double inv_sqrt_u = 1.0 / std::sqrt(interval.upper);
    const double sqrt_l = std::sqrt(interval.lower);
    if (current_price < interval.lower) {
        return TokenAmounts{delta_l * (1.0 / sqrt_l - inv_sqrt_u), 0.0};
    }
    if (current_price <= interval.upper) {
        return TokenAmounts{delta_l * (1.0 / std::sqrt(current_price) - inv_sqrt_u),
                            delta_l * (std::sqrt(current_price) - sqrt_l)};
    }
    return TokenAmounts{0.0, delta_l * (std::sqrt(interval.upper) - sqrt_l)};
}

std::pair<Position, Position> split_position(double delta_l, const PriceInterval& interval,
                                             double current_price) {
    if (!(delta_l > 0.0)) {
        throw std::domain_error("split_position: liquidity must be positive");
    }
    if (!interval.contains(current_price)) {
        throw std::domain_error("split_position: current price must lie inside the interval");
    }
    Position left(delta_l, PriceInterval(interval.lower, current_price), current_price, Side::Left);
    Position right(delta_l, PriceInterval(current_price, interval.upper), current_price, Side::Right);
    return {std::move(left), std::move(right)};
}

TokenAmounts holdings_at_exit(const Position& position, double exit_price) {
    if (!(exit_price > 0.0)) {
        throw std::domain_error("holdings_at_exit: exit price must be positive");
    }
    const PriceInterval& band = position.interval;
    const double dl = position.liquidity;
    if (position.side == Side::Right) {
        // Entered below the band holding only X; the band converts X into Y
        // as the price climbs through it.
        if (exit_price <= band.lower) return position.initial_deposits();
        if (exit_price >= band.upper) {
            return TokenAmounts{0.0, dl * (std::sqrt(band.upper) - std::sqrt(band.lower))};
        }
        return TokenAmounts{dl * (1.0 / std::sqrt(exit_price) - 1.0 / std::sqrt(band.upper)),
                            dl * (std::sqrt(exit_price) - std::sqrt(band.lower))};
    }
    // Left side: entered above the band holding only Y, mirrored conversion.
    if (exit_price >= band.upper) return position.initial_deposits();
    if (exit_price <= band.lower) {
        return TokenAmounts{dl * (1.0 / std::sqrt(band.lower) - 1.0 / std::sqrt(band.upper)), 0.0};
    }
    return TokenAmounts{dl * (1.0 / std::sqrt(exit_price) - 1.0 / std::sqrt(band.upper)),
                        dl * (std::sqrt(exit_price) - std::sqrt(band.lower))};
}

double impermanent_loss(const Position& position, double exit_price) {
    const TokenAmounts initial = position.initial_deposits();
    const TokenAmounts exit = holdings_at_exit(position, exit_price);
    return (exit.y - initial.y) + (exit.x - initial.x) * exit_price;
}

double average_sell_price(const PriceInterval& interval) {
    return std::sqrt(interval.lower * interval.upper);
}

} // namespace ilhedge
