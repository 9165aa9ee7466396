#pragma once

#include <stdexcept>
#include <string>

namespace ilhedge {

// Which side of the entry price a liquidity range sits on. Right-side ranges
// sit above the entry price (ask-like), left-side ranges below (bid-like).
enum class Side { Right, Left };

inline const char* to_string(Side side) {
    return side == Side::Right ? "right" : "left";
}

// A liquidity provision price band [lower, upper], in token Y per token X.
// Degenerate bands (lower == upper) are allowed; they carry zero deposits.
struct PriceInterval {
    double lower;
    double upper;

    PriceInterval(double lower_, double upper_) : lower(lower_), upper(upper_) {
        if (!(lower > 0.0) || !(upper >= lower)) {
            throw std::domain_error("PriceInterval: require 0 < lower <= upper, got [" +
                                    std::to_string(lower_) + ", " + std::to_string(upper_) + "]");
        }
    }

    double width() const { return upper - lower; }
    bool contains(double price) const { return lower <= price && price <= upper; }
    bool degenerate() const { return lower == upper; }
};

// Paired quantities of token X and token Y.
struct TokenAmounts {
    double x{0.0};
    double y{0.0};
};

} // namespace ilhedge
