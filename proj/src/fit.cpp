#include "kfreewalk/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kfreewalk/arith.hpp"

namespace kfreewalk {

LineFit least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw DomainError("least_squares: x and y differ in length");
    }
    if (x.size() < 2) {
        throw DomainError("least_squares: need at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw DomainError("least_squares: x values are all equal");
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

LineFit loglog_fit(std::span<const double> x, std::span<const double> y)
{
    std::vector<double> lx(x.size());
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) {
            throw DomainError("loglog_fit: x values must be positive");
        }
        lx[i] = std::log(x[i]);
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) {
            throw DomainError("loglog_fit: y values must be positive");
        }
        ly[i] = std::log(y[i]);
    }
    return least_squares(lx, ly);
}

}  // namespace kfreewalk
