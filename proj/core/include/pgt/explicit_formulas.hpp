#ifndef PGT_EXPLICIT_FORMULAS_HPP
#define PGT_EXPLICIT_FORMULAS_HPP

#include <limits>
#include <string>
#include <vector>

#include "pgt/types.hpp"

// Evaluation of the singularity-side counting formulas over a catalog.  The
// module name avoids the reserved word 'explicit'.
namespace pgt::formulas {

// Smoothed counting function of order j >= n from the singularity data:
//   sum over channels of sign * [ sum over real alpha in (rho, 2*rho] +
//   sum over critical-line alpha of lambda = 2*rho channels ]
//   of order * x^(alpha+j) / prod_{k=0..j} (alpha+k).
// Terms are accumulated as complex numbers per channel (critical entries
// sorted by |Im alpha| so conjugate pairs cancel next to each other) and the
// imaginary residue of the total must vanish to 1e-8 relative, else the
// catalog is not conjugate-closed and a ValidationError is raised.
//
// y_max restricts the critical sums to |Im alpha| <= y_max (the truncated
// variant used for tail studies); the default includes everything.
// Channel sums are independent and evaluated in parallel for threads > 1;
// the reduction is ordered by channel index, so results do not depend on the
// thread count.
double explicit_psi_j(const SingularityCatalog& catalog, double x, int j,
                      double y_max = std::numeric_limits<double>::infinity(), int threads = 1);

// Result of the conditional order-(n-1) evaluator: the assembled value plus
// the error magnitude x^(2*rho + epsilon1 + n - 1) / (epsilon1 * T^(1-delta))
// implied by the assumed growth of the shifted contour integrals.  The bound
// is reported, never added to the value.
struct ConditionalPsiResult {
    double value = 0.0;
    double reported_bound = 0.0;
};

// Order-(n-1) counting formula: polynomial-times-log part, polynomial part,
// the full real-singularity sum (denominators prod_{k=0..n-1} (alpha+k), so
// real singularities at 0, -1, ..., -(n-1) are rejected), and the critical
// sums of every channel truncated at |Im alpha| <= config.truncation_height.
ConditionalPsiResult explicit_psi_nminus1(const SingularityCatalog& catalog,
                                          const ConditionalPsiConfig& config, double x);

// Channel template for weyl_sample.  lambda = NaN means "use 2*rho".
struct WeylChannelSpec {
    int p = 1;
    std::string tau = "std";
    double lambda = std::numeric_limits<double>::quiet_NaN();
    std::vector<Singularity> real_singularities;
};

// Synthetic single-channel catalog whose critical-line heights are
// gamma_k = (k/c1)^(1/n) for k = 1 .. floor(c1 * height^n), conjugate-closed
// with all orders 1, so the counting function is c1*y^n + O(1) exactly.
SingularityCatalog weyl_sample(const ManifoldParams& params, double c1, double height,
                               const WeylChannelSpec& spec = {});

// Leading term x^(2*rho) / (2*rho) of the order-0 counting function.
double main_term(const ManifoldParams& params, double x);

// Majorant of the critical tail beyond height y at order j:
//   sum over critical alpha with |Im alpha| > y of prod_{k=0..j} |alpha+k|^-1
// (all channels, unsigned).  x^(rho+j) times this bounds the truncation
// error of explicit_psi_j.
double critical_tail_majorant(const SingularityCatalog& catalog, int j, double y);

} // namespace pgt::formulas

#endif
