#pragma once

#include <span>

namespace kfreewalk {

/// Ordinary least squares y = intercept + slope·x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Requires at least two points and non-constant x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// least_squares on (log x, log y); every value must be positive.
LineFit loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace kfreewalk
