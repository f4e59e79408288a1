#ifndef PGT_CHEBYSHEV_HPP
#define PGT_CHEBYSHEV_HPP

#include <cstdint>

#include "pgt/types.hpp"

namespace pgt::chebyshev {

// Evaluation request at the counting level: a point x > 1 and an integration
// order j >= 0.
struct CountingQuery {
    CountingQuery(double x_, int j_) : x(x_), j(j_) {
        if (!(x > 1.0)) throw ValidationError("CountingQuery: x must be > 1");
        if (j < 0) throw ValidationError("CountingQuery: j must be >= 0");
    }
    double x;
    int j;
};

// Sum of weight * multiplicity over all records of norm <= x (a right-
// continuous, non-decreasing step function).  Throws IncompleteDataError for
// x beyond the spectrum's completeness bound.
double psi0(const LengthSpectrum& spectrum, double x);

// j-fold iterated integral of psi0 in closed form:
//   (1/j!) * sum of weight * multiplicity * (x - norm)^j over norm <= x.
// Continuous in x; requires j >= 1 (psi0 is the j = 0 case).
double psi_j(const LengthSpectrum& spectrum, double x, int j);

// Number of primitive records of norm <= x, counted with multiplicity.
std::int64_t pi_gamma(const LengthSpectrum& spectrum, double x);

// Cauchy principal value of the logarithmic integral, integral from 0 to x
// of dt/log(t), for x > 1.  abs_tol steers the quadrature leg; the series
// legs are evaluated to full double precision regardless.
double li(double x, double abs_tol = 1e-12);

} // namespace pgt::chebyshev

#endif
