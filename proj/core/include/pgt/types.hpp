#ifndef PGT_TYPES_HPP
#define PGT_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgt/errors.hpp"
#include "pgt/rational.hpp"

namespace pgt {

// Consistency tolerance used by constructors that accept redundant fields
// (e.g. a record carrying both a norm and a length).
inline constexpr double kFieldConsistencyTol = 1e-9;

// Parameters of the underlying space: n is the (half) dimension parameter of
// the counting problem, rho the half-sum of positive roots.  rho is kept as
// an exact rational because every exponent downstream is a rational function
// of (n, rho, j).
struct ManifoldParams {
    ManifoldParams() : n(2), rho(1, 2) {}
    ManifoldParams(int n_, Rational rho_) : n(n_), rho(std::move(rho_)) {
        if (n < 2) throw ValidationError("ManifoldParams: n must be >= 2");
        if (!(rho > Rational(0))) throw ValidationError("ManifoldParams: rho must be positive");
    }

    // Preset for real hyperbolic space of dimension n: rho = (n-1)/2.
    static ManifoldParams real_hyperbolic(int n_) { return ManifoldParams(n_, Rational(n_ - 1, 2)); }

    double rho_d() const { return rho.to_double(); }
    Rational two_rho() const { return Rational(2) * rho; }

    int n;
    Rational rho;
};

// One aggregated entry of a length spectrum.  norm = exp(length); weight is
// the length of the underlying primitive class, so weight == length exactly
// for primitive records and length = k * weight, k >= 2, for k-th powers.
// multiplicity counts how many conjugacy classes share this (norm, weight).
struct GeodesicRecord {
    GeodesicRecord(double norm_, double length_, double weight_, bool primitive_, int multiplicity_)
        : norm(norm_), length(length_), weight(weight_), primitive(primitive_), multiplicity(multiplicity_) {
        if (!(norm > 1.0)) throw ValidationError("GeodesicRecord: norm must be > 1");
        if (!(length > 0.0)) throw ValidationError("GeodesicRecord: length must be > 0");
        if (!(weight > 0.0)) throw ValidationError("GeodesicRecord: weight must be > 0");
        if (multiplicity < 1) throw ValidationError("GeodesicRecord: multiplicity must be >= 1");
        if (std::fabs(std::log(norm) - length) > kFieldConsistencyTol * std::max(1.0, std::fabs(length)))
            throw ValidationError("GeodesicRecord: norm != exp(length)");
        if (primitive) {
            if (std::fabs(weight - length) > kFieldConsistencyTol * length)
                throw ValidationError("GeodesicRecord: primitive record must have weight == length");
        } else {
            double k = length / weight;
            double k_round = std::nearbyint(k);
            if (k_round < 2.0 || std::fabs(k - k_round) > kFieldConsistencyTol * std::max(1.0, k))
                throw ValidationError("GeodesicRecord: power record must have length = k*weight, k >= 2");
        }
    }

    double norm;
    double length;
    double weight;
    bool primitive;
    int multiplicity;
};

// A length spectrum complete up to norm_bound.  Records are stored sorted
// ascending by norm (ties broken by weight, then primitive-first) so the
// counting functions can binary-search.  Completeness up to the bound is a
// promise of the producer, not something this container can verify.
class LengthSpectrum {
public:
    LengthSpectrum(std::vector<GeodesicRecord> records, double norm_bound)
        : records_(std::move(records)), norm_bound_(norm_bound) {
        if (!(norm_bound_ > 1.0)) throw ValidationError("LengthSpectrum: norm_bound must be > 1");
        for (const GeodesicRecord& r : records_) {
            if (r.norm > norm_bound_ * (1.0 + kFieldConsistencyTol))
                throw ValidationError("LengthSpectrum: record norm exceeds norm_bound");
        }
        std::sort(records_.begin(), records_.end(), [](const GeodesicRecord& a, const GeodesicRecord& b) {
            if (a.norm != b.norm) return a.norm < b.norm;
            if (a.weight != b.weight) return a.weight < b.weight;
            return a.primitive && !b.primitive;
        });
    }

    const std::vector<GeodesicRecord>& records() const { return records_; }
    double norm_bound() const { return norm_bound_; }
    std::size_t size() const { return records_.size(); }

private:
    std::vector<GeodesicRecord> records_;
    double norm_bound_;
};

// A singularity of the combined zeta quotient: position alpha and a signed
// order (positive for zeros contributing positively after the channel sign,
// negative for poles).  order == 0 is meaningless and flagged by the catalog
// validator.
struct Singularity {
    std::complex<double> alpha{0.0, 0.0};
    int order = 1;
};

// One (p, tau, lambda) channel of a singularity catalog.  sign must equal
// (-1)^(p+1); real singularities sit on the real axis in (-inf, 2*rho], and
// critical singularities sit on the line Re = rho (stored with their full
// position; files carry only the imaginary part).
struct Channel {
    int p = 0;
    std::string tau;
    double lambda = 0.0;
    int sign = -1;
    std::vector<Singularity> real_singularities;
    std::vector<Singularity> critical_singularities;
};

inline int expected_channel_sign(int p) { return (p % 2 == 0) ? -1 : 1; }

// The singularity data of one space: channels plus the common Weyl constant
// governing the growth of each channel's critical-line counting function.
struct SingularityCatalog {
    ManifoldParams params;
    double weyl_constant = 1.0;
    std::vector<Channel> channels;
};

// A structural defect found by validate_catalog.  Violations are data, not
// exceptions: a catalog can carry several at once and callers decide what is
// fatal.
struct Violation {
    std::string channel;    // "channel[i] tau=..." or "catalog"
    std::string invariant;  // short invariant name, e.g. "critical line"
    std::string detail;
};

// Exponents of x, log x and log log x in a quantity of the form
// x^a (log x)^b (log log x)^c.
struct ExponentTriple {
    Rational x_exp;
    Rational log_exp;
    Rational loglog_exp;
};

// The solved smoothing parameters for one (n, rho, j, epsilon): the exponent
// pair (gamma, beta) solving the two balance equations, and the derived
// window d(x) and truncation height Y(x).  conditional marks the j = n-1
// plan, which relies on an unproven contour-integral growth assumption.
struct SmoothingPlan {
    int j = 0;
    double epsilon = 0.0;
    Rational gamma_exp;
    Rational beta;
    ExponentTriple d_exponents;
    ExponentTriple y_exponents;
    bool conditional = false;
};

// Logarithmic measure of threshold exceedances, one entry per unit interval
// [e^i, e^(i+1)].
struct IntervalMeasure {
    int i = 0;
    double exceed_measure = 0.0;
};

struct ExceptionalReport {
    std::vector<IntervalMeasure> intervals;
    double total_measure = 0.0;
};

// Configuration for the conditional order-(n-1) asymptotic evaluator: the
// two polynomial coefficient lists (index m holds the coefficient of
// x^(n-1-m), so entry 0 is the leading one), the critical-line truncation
// height T, and the (epsilon1, delta) pair entering the reported error bound
// x^(2*rho+epsilon1+n-1) / (epsilon1 * T^(1-delta)).
struct ConditionalPsiConfig {
    std::vector<double> poly_log_coeffs;
    std::vector<double> poly_coeffs;
    double truncation_height = 0.0;
    double epsilon1 = 0.0;
    double delta = 0.0;
};

} // namespace pgt

#endif
