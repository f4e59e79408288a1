#ifndef PGT_TESTS_ORACLES_HPP
#define PGT_TESTS_ORACLES_HPP

// Independent reference implementations and frozen reference values used by
// the test suite.  Everything here deliberately avoids the code paths of the
// library under test: integrals are done by quadrature instead of closed
// forms, sums are re-accumulated in extended precision in file order, and
// the frozen constants were produced with an arbitrary-precision package
// (mpmath, 30 significant digits) and pasted in as literals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "pgt/types.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Frozen reference values (mpmath, 30 digits).
// ---------------------------------------------------------------------------

// Logarithmic integral li(x), principal value at the t = 1 pole.
inline constexpr double kLi2 = 1.04516378011749278484458888919;
inline constexpr double kLiE = 1.89511781635593675546652093433;       // li(e)
inline constexpr double kLi10 = 6.16559950478729793752298175267;
inline constexpr double kLi100 = 30.1261415840796299259017413390;
inline constexpr double kLi1000 = 177.609657990152226687640623949;
inline constexpr double kLi1e6 = 78627.5491594621819198629107479;

// Modular-surface eigenvalue data: lambda(t) = (t + sqrt(t^2-4))/2.
inline constexpr double kLambda3 = 2.61803398874989484820458683437;
inline constexpr double kNorm3 = 6.85410196624968454461376050309;     // lambda(3)^2
inline constexpr double kWeight3 = 1.92484730023841378989103565372;   // 2 log lambda(3)
inline constexpr double kLambda4 = 3.73205080756887729352744634151;
inline constexpr double kNorm4 = 13.9282032302755091741097853661;
inline constexpr double kWeight4 = 2.63391579384963341725009269462;
inline constexpr double kNorm3Squared = 46.9787137637477918122963235217;  // lambda(3)^4

// ---------------------------------------------------------------------------
// psi_j by j-fold iterated trapezoid quadrature of the step function psi0.
// ---------------------------------------------------------------------------

// Grid: uniform nodes of the given step on [1, x], refined with every jump
// position N and a pre-jump node N*(1 - 1e-12).  The pre-jump nodes resolve
// the discontinuity, so the first trapezoid pass is exact up to the O(1e-12)
// slivers, the second pass is exact (piecewise-linear integrand) and later
// passes carry the usual O(step^2) error.
inline double psi_j_quadrature(const pgt::LengthSpectrum& spectrum, double x, int j,
                               double step = 1e-3) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>((x - 1.0) / step) + 64);
    for (double t = 1.0; t < x; t += step) grid.push_back(t);
    grid.push_back(x);
    for (const pgt::GeodesicRecord& r : spectrum.records()) {
        if (r.norm > x) continue;
        grid.push_back(r.norm * (1.0 - 1e-12));
        grid.push_back(r.norm);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // psi0 on the grid: records are sorted by norm, so one sweep suffices.
    const auto& recs = spectrum.records();
    std::vector<double> value(grid.size());
    {
        std::size_t next = 0;
        double acc = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            while (next < recs.size() && recs[next].norm <= grid[g]) {
                acc += recs[next].weight * recs[next].multiplicity;
                ++next;
            }
            value[g] = acc;
        }
    }

    for (int pass = 0; pass < j; ++pass) {
        double acc = 0.0;
        double prev = value[0];
        value[0] = 0.0;
        for (std::size_t g = 1; g < grid.size(); ++g) {
            const double cur = value[g];
            acc += 0.5 * (prev + cur) * (grid[g] - grid[g - 1]);
            prev = cur;
            value[g] = acc;
        }
    }
    return value.back();
}

// ---------------------------------------------------------------------------
// Nested Gauss-Legendre quadrature for the iterated-integral form of the
// forward difference: Delta_j^+ f(x) = int_0^d ... int_0^d f^(j)(x + sum t_i).
// The caller supplies the j-th derivative analytically.
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<double> nodes;    // on (0, 1)
    std::vector<double> weights;  // for unit interval

    explicit GaussLegendre(int m) {
        nodes.resize(m);
        weights.resize(m);
        // Newton iteration on P_m; standard symmetric-root construction.
        for (int k = 0; k < (m + 1) / 2; ++k) {
            double z = std::cos(M_PI * (k + 0.75) / (m + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int l = 0; l < m; ++l) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * l + 1.0) * z * p1 - l * p2) / (l + 1.0);
                }
                pp = m * (z * p0 - p1) / (z * z - 1.0);
                double dz = p0 / pp;
                z -= dz;
                if (std::fabs(dz) < 1e-15) break;
            }
            const double w = 2.0 / ((1.0 - z * z) * pp * pp);
            nodes[k] = 0.5 * (1.0 - z);
            nodes[m - 1 - k] = 0.5 * (1.0 + z);
            weights[k] = 0.5 * w;
            weights[m - 1 - k] = 0.5 * w;
        }
    }
};

inline double nested_delta_quadrature(const std::function<double(double)>& f_deriv_j, double x,
                                      double d, int j, int points = 20) {
    const GaussLegendre gl(points);
    // level == j evaluates f^(j); each level above integrates over [0, d].
    std::function<double(double, int)> level = [&](double shift, int depth) -> double {
        if (depth == 0) return f_deriv_j(x + shift);
        double acc = 0.0;
        for (int k = 0; k < points; ++k)
            acc += gl.weights[k] * level(shift + d * gl.nodes[k], depth - 1);
        return acc * d;
    };
    return level(0.0, j);
}

// ---------------------------------------------------------------------------
// Extended-precision re-summation of the order-j explicit formula, in plain
// catalog order (no pairing, no ordered reduction).
// ---------------------------------------------------------------------------

inline std::complex<long double> ld_term(const std::complex<long double>& alpha, long double lx,
                                         int j) {
    std::complex<long double> den(1.0L, 0.0L);
    for (int k = 0; k <= j; ++k) den *= alpha + static_cast<long double>(k);
    return std::exp((alpha + static_cast<long double>(j)) * lx) / den;
}

inline std::complex<long double> ld_explicit_psi_j(const pgt::SingularityCatalog& catalog, double x,
                                                   int j, double y_max) {
    const long double lx = std::log(static_cast<long double>(x));
    const double rho = catalog.params.rho.to_double();
    const double two_rho = 2.0 * rho;
    std::complex<long double> total(0.0L, 0.0L);
    for (const pgt::Channel& ch : catalog.channels) {
        std::complex<long double> sum(0.0L, 0.0L);
        for (const pgt::Singularity& s : ch.real_singularities) {
            if (!(s.alpha.real() > rho) || s.alpha.real() > two_rho * (1.0 + 1e-12)) continue;
            sum += static_cast<long double>(s.order) *
                   ld_term({s.alpha.real(), s.alpha.imag()}, lx, j);
        }
        if (std::fabs(ch.lambda - two_rho) <= 1e-12 * std::max(1.0, two_rho)) {
            for (const pgt::Singularity& s : ch.critical_singularities) {
                if (std::fabs(s.alpha.imag()) > y_max) continue;
                sum += static_cast<long double>(s.order) *
                       ld_term({s.alpha.real(), s.alpha.imag()}, lx, j);
            }
        }
        total += static_cast<long double>(ch.sign) * sum;
    }
    return total;
}

// Extended-precision re-summation of the conditional order-(n-1) evaluator:
// polynomial terms, the unfiltered real sum with order-(n-1) denominators,
// and the critical sum over all channels truncated at height T.
inline std::complex<long double> ld_conditional_psi(const pgt::SingularityCatalog& catalog,
                                                    const pgt::ConditionalPsiConfig& config,
                                                    double x) {
    const int jn = catalog.params.n - 1;
    const long double lx = std::log(static_cast<long double>(x));
    std::complex<long double> total(0.0L, 0.0L);
    for (std::size_t m = 0; m < config.poly_log_coeffs.size(); ++m)
        total += static_cast<long double>(config.poly_log_coeffs[m]) *
                 std::exp(static_cast<long double>(jn - static_cast<int>(m)) * lx) * lx;
    for (std::size_t m = 0; m < config.poly_coeffs.size(); ++m)
        total += static_cast<long double>(config.poly_coeffs[m]) *
                 std::exp(static_cast<long double>(jn - static_cast<int>(m)) * lx);
    for (const pgt::Channel& ch : catalog.channels) {
        std::complex<long double> sum(0.0L, 0.0L);
        for (const pgt::Singularity& s : ch.real_singularities)
            sum += static_cast<long double>(s.order) *
                   ld_term({s.alpha.real(), s.alpha.imag()}, lx, jn);
        for (const pgt::Singularity& s : ch.critical_singularities) {
            if (std::fabs(s.alpha.imag()) > config.truncation_height) continue;
            sum += static_cast<long double>(s.order) *
                   ld_term({s.alpha.real(), s.alpha.imag()}, lx, jn);
        }
        total += static_cast<long double>(ch.sign) * sum;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Random small spectra for property tests.  All geometric consistency is by
// construction (norm computed as exp(length)), so the record constructor's
// checks pass exactly.
// ---------------------------------------------------------------------------

inline pgt::LengthSpectrum random_small_spectrum(std::mt19937_64& rng, double norm_bound) {
    std::uniform_int_distribution<int> count_dist(5, 40);
    std::uniform_real_distribution<double> len_dist(std::log(4.0), std::log(0.8 * norm_bound));
    std::uniform_int_distribution<int> mult_dist(1, 4);
    std::uniform_int_distribution<int> power_coin(0, 2);

    const int primitives = count_dist(rng);
    std::vector<pgt::GeodesicRecord> records;
    records.reserve(static_cast<std::size_t>(primitives) * 2);
    for (int c = 0; c < primitives; ++c) {
        const double length = len_dist(rng);
        const double norm = std::exp(length);
        const int mult = mult_dist(rng);
        records.emplace_back(norm, length, length, true, mult);
        if (power_coin(rng) == 0 && 2.0 * length <= std::log(norm_bound))
            records.emplace_back(std::exp(2.0 * length), 2.0 * length, length, false, mult);
    }
    return pgt::LengthSpectrum(std::move(records), norm_bound);
}

} // namespace oracles

#endif
