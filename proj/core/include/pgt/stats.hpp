#ifndef PGT_STATS_HPP
#define PGT_STATS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "pgt/errors.hpp"

namespace pgt {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0; // 0 when the fit has no residual dof (2 points)
};

// Ordinary least squares of y against x.  Needs >= 2 points with at least
// two distinct abscissae; the slope standard error comes from the residual
// variance with m - 2 degrees of freedom.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m != y.size()) throw ValidationError("linear_fit: size mismatch");
    if (m < 2) throw ValidationError("linear_fit: need at least 2 points");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    if (sxx <= 0.0) throw ValidationError("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    if (m > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (static_cast<double>(m - 2) * sxx));
    }
    return fit;
}

} // namespace pgt

#endif
