#ifndef PGT_GALLAGHER_HPP
#define PGT_GALLAGHER_HPP

#include <functional>

#include "pgt/types.hpp"

namespace pgt::gallagher {

// j-fold forward difference with step d:
//   sum_{k=0..j} (-1)^(j-k) C(j,k) f(x + k*d).
// For j-times differentiable f this equals the iterated-integral form of the
// smoothing operator; d^-j times it brackets f^(j) over [x, x+jd].
double forward_difference(const std::function<double(double)>& f, double x, double d, int j);

// Solves the two balance equations of the smoothing construction,
//   (gamma - 2*rho + 1)/(j+1) = 1 - rho + (n-1)(2*rho + 2j - 2*gamma)/(2j+3-2n)
//   beta/(j+1)               = (n-1)(1 - 2*beta)/(2j+3-2n),
// in exact rational arithmetic and derives the window size
// d = x^e1 (log x)^e2 (log log x)^e3 from d^(j+1) = x^(gamma-2*rho+1) * logs
// and the truncation height Y from d^(2j+2) Y^(2j+3-2n) = x^(2j+2-2*rho) * logs.
// Supported range is j >= n-1 (the system divides by 2j+3-2n); the j = n-1
// plan is flagged conditional, since it rests on an unproven growth bound
// for the shifted contour integrals.
SmoothingPlan solve_plan(const ManifoldParams& params, int j, double epsilon);

// Error exponents at the psi_0 level implied by a plan's window:
// x-exponent d_x + 2*rho - 1 and log-exponent d_log (the x^(2*rho-1)*d
// smoothing penalty carries no logarithms of its own).
Rational psi0_error_x_exponent(const ManifoldParams& params, int j);
Rational psi0_error_log_exponent(const ManifoldParams& params, int j);

// The psi_0-level x-exponents 2*rho - rho*(2j+1)/(2nj+1) for j in
// [j_min, j_max]; strictly increasing in j with limit 2*rho - rho/n.
std::vector<Rational> exponent_sequence(const ManifoldParams& params, int j_min, int j_max);

// d^-j * forward_difference(psi_j_eval, x, d, j) with d built from the
// plan's exponent triple.  Requires x > e^e (the window uses log log x) and
// d(x) <= x.  For spectrum-backed psi_j the output lies in
// [psi0(x), psi0(x + j*d)].
double smooth_psi0_estimate(const std::function<double(double)>& psi_j_eval,
                            const SmoothingPlan& plan, double x);

// Which counting level a remainder lives at; picks the threshold exponent
// gamma' (plan.gamma_exp at the psi_j level, the descended exponent at the
// psi_0 level).
enum class RemainderLevel { PsiJ, Psi0 };

// Threshold x^gamma' (log x)^beta (log log x)^(beta+epsilon) for the
// exceptional-set test.  Requires x > e.
double threshold_value(const SmoothingPlan& plan, const ManifoldParams& params, double x,
                       RemainderLevel level);

// Logarithmic measure of the threshold exceedance set per unit interval
// [e^i, e^(i+1)], i in [i_min, i_max], estimated on a geometric grid of
// grid_density midpoints per interval (the measure dx/x is uniform in
// log x, so each interval has total measure 1 and each midpoint carries
// 1/grid_density).  Intervals are independent and processed in parallel for
// threads > 1; the per-interval counts are integers, so results do not
// depend on the thread count.
ExceptionalReport exceptional_report(const std::function<double(double)>& remainder,
                                     const SmoothingPlan& plan, const ManifoldParams& params,
                                     int i_min, int i_max, int grid_density,
                                     RemainderLevel level = RemainderLevel::Psi0, int threads = 1);

struct ConvergeResult {
    bool finite_trend = false;
    double fitted_rate = 0.0;
};

// Fits log(measure) against log(i * (log i)^(1+2*epsilon)) over the
// intervals with positive measure and i >= 2.  finite_trend is true when
// the fitted slope is <= -1 within twice its standard error (the measures
// then admit a convergent majorant); fewer than 3 usable points counts as
// finite with fitted_rate = -infinity (a finite sum needs no tail bound).
ConvergeResult converge_check(const ExceptionalReport& report, double epsilon = 0.01);

struct UnconditionalResult {
    double estimate = 0.0;
    Rational error_exponent;
};

// The log-free pipeline: window d = x^(1-rho/n), critical truncation at
// K = x^(rho/n), estimate d^-j * (j-fold difference of psi_j).  The error
// exponent 2*rho - rho/n is computed three ways (smoothing penalty d*x^(2*rho-1),
// truncated-sum contribution x^rho*K^(n-1), and tail d^-j*x^(rho+j)*K^(n-j-1))
// and the three rationals must agree; the result is independent of j, which
// is why taking j > n buys nothing here.  Requires j >= n.
UnconditionalResult unconditional_psi0(const LengthSpectrum& spectrum, const ManifoldParams& params,
                                       int j, double x);
UnconditionalResult unconditional_psi0(const SingularityCatalog& catalog, const ManifoldParams& params,
                                       int j, double x);

// integral over t of (sum over critical alpha with t <= |Im alpha| <= t+1
// and y < |Im alpha| <= w of prod_{k=0..j} |alpha+k|^-1)^2 dt, computed
// exactly by an event sweep (the inner sum is piecewise constant in t).  On
// a catalog obeying the Weyl law this decays like y^-(2j+3-2n).
double gallagher_tail_integral(const SingularityCatalog& catalog, int j, double y, double w);

} // namespace pgt::gallagher

#endif
