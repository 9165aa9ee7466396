#pragma once

#include <utility>

#include "ilhedge/types.hpp"

namespace ilhedge {

// Constant-product pool tracked by liquidity L and price P; the reserves
// X = L/sqrt(P) and Y = L*sqrt(P) are derived, never stored.
struct PoolState {
    double liquidity{0.0};  // L
    double price{0.0};      // P, token Y per token X
    double fee_rate{0.0};   // input-side swap fee, in [0, 1)
};

// Pool state from explicit reserves: L = sqrt(X*Y), P = Y/X.
PoolState pool_from_reserves(double x, double y, double fee_rate = 0.0);

// A concentrated-liquidity position on one side of its entry price.
// Right-side positions require entry_price <= interval.lower, left-side
// positions entry_price >= interval.upper.
struct Position {
    double liquidity;  // delta L
    PriceInterval interval;
    double entry_price;
    Side side;

    Position(double liquidity_, PriceInterval interval_, double entry_price_, Side side_);

    // Tokens deposited when the position was opened.
    TokenAmounts initial_deposits() const;
};

// Reserves (X, Y) implied by the pool state.
TokenAmounts reserves_from_state(const PoolState& pool);

// Token Y received for depositing dx_in of token X. The fee is charged on
// the input: effective input is (1 - fee_rate) * dx_in.
double swap_out(const PoolState& pool, double dx_in);

// Deposits required to supply delta_l liquidity on the interval at the
// given pool price (three-branch concentrated-deposit formula).
TokenAmounts deposits_for_liquidity(double delta_l, const PriceInterval& interval,
                                    double current_price);

// Splits a straddling range at the current price into a left position on
// [lower, current_price] and a right position on [current_price, upper],
// each carrying the full delta_l.
std::pair<Position, Position> split_position(double delta_l, const PriceInterval& interval,
                                             double current_price);

// Tokens retrievable from the pool when closing the position at exit_price.
TokenAmounts holdings_at_exit(const Position& position, double exit_price);

// Realized impermanent loss in token Y units:
// IL = (Y_t - Y_0) + (X_t - X_0) * P_t. Always <= 0.
double impermanent_loss(const Position& position, double exit_price);

// Geometric mean sqrt(lower * upper): the average price at which the X
// deposit is sold when the price traverses the whole band.
double average_sell_price(const PriceInterval& interval);

} // namespace ilhedge
