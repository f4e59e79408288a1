#include "pgt/chebyshev.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pgt/errors.hpp"

namespace pgt::chebyshev {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

void check_query(const LengthSpectrum& spectrum, double x) {
    if (!std::isfinite(x) || !(x > 1.0)) throw ValidationError("x must be a finite real > 1");
    if (x > spectrum.norm_bound() * (1.0 + kFieldConsistencyTol))
        throw IncompleteDataError("x = " + std::to_string(x) + " exceeds spectrum norm_bound = " +
                                  std::to_string(spectrum.norm_bound()));
}

// E1(a) = integral from a to infinity of e^-v / v dv, by the alternating
// series -gamma - log a + sum (-1)^(k+1) a^k / (k k!); fast for a <= 1.
double exp_integral_e1(double a) {
    double term = 1.0, series = 0.0;
    for (int k = 1; k < 64; ++k) {
        term *= a / k;
        const double contrib = ((k % 2 == 1) ? term : -term) / k;
        series += contrib;
        if (std::fabs(contrib) < 1e-18 * (1.0 + std::fabs(series))) break;
    }
    return -kEulerGamma - std::log(a) + series;
}

// integral from 0 to a of 2 sinh(u)/u du (the principal-value core across
// u = 0), by its even power series.
double sinh_core(double a) {
    double term = a, series = a; // m = 0 term: a / (1 * 1!)
    double factorial = 1.0;
    for (int m = 1; m < 64; ++m) {
        term *= a * a;
        factorial *= (2.0 * m) * (2.0 * m + 1.0);
        const double contrib = term / ((2.0 * m + 1.0) * factorial);
        series += contrib;
        if (contrib < 1e-18 * series) break;
    }
    return 2.0 * series;
}

double exp_over_u(double u) { return std::exp(u) / u; }

double simpson(double fa, double fm, double fb, double h) { return h * (fa + 4.0 * fm + fb) / 6.0; }

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = exp_over_u(lm), frm = exp_over_u(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    // Floor the per-segment target at the roundoff scale of the segment value;
    // below that, delta is noise and further splitting cannot converge.
    const double floor_tol = 4.0 * kMachineEps * std::fabs(left + right);
    if (depth <= 0 || std::fabs(delta) <= 15.0 * std::max(tol, floor_tol))
        return left + right + delta / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double psi0(const LengthSpectrum& spectrum, double x) {
    check_query(spectrum, x);
    KahanSum acc;
    for (const GeodesicRecord& r : spectrum.records()) {
        if (r.norm > x) break;
        acc.add(r.weight * r.multiplicity);
    }
    return acc.sum;
}

double psi_j(const LengthSpectrum& spectrum, double x, int j) {
    if (j < 1) throw ValidationError("psi_j: j must be >= 1 (use psi0 for j = 0)");
    check_query(spectrum, x);
    KahanSum acc;
    for (const GeodesicRecord& r : spectrum.records()) {
        if (r.norm > x) break;
        acc.add(r.weight * r.multiplicity * ipow(x - r.norm, j));
    }
    double factorial = 1.0;
    for (int k = 2; k <= j; ++k) factorial *= k;
    return acc.sum / factorial;
}

std::int64_t pi_gamma(const LengthSpectrum& spectrum, double x) {
    check_query(spectrum, x);
    std::int64_t count = 0;
    for (const GeodesicRecord& r : spectrum.records()) {
        if (r.norm > x) break;
        if (r.primitive) count += r.multiplicity;
    }
    return count;
}

double li(double x, double abs_tol) {
    if (!(x > 1.0)) throw ValidationError("li: x must be > 1");
    if (!(abs_tol > 0.0)) throw ValidationError("li: abs_tol must be positive");
    // After t = e^u the integral is the principal value of e^u/u over
    // (-inf, L], L = log x.  Split at a = min(1, L): the unbounded leg is
    // -E1(a), the symmetric window around u = 0 is the sinh series, and the
    // remaining [a, L] leg is smooth and handled by adaptive Simpson.
    const double L = std::log(x);
    const double a = std::min(1.0, L);
    double value = -exp_integral_e1(a) + sinh_core(a);
    if (L > a) {
        const double fa = exp_over_u(a), fb = exp_over_u(L), fm = exp_over_u(0.5 * (a + L));
        value += adaptive_simpson(a, L, fa, fm, fb, simpson(fa, fm, fb, L - a), abs_tol, 48);
    }
    return value;
}

} // namespace pgt::chebyshev
