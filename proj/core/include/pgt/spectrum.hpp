#ifndef PGT_SPECTRUM_HPP
#define PGT_SPECTRUM_HPP

#include <cstdint>
#include <vector>

#include "pgt/types.hpp"

namespace pgt::spectrum {

// One hyperbolic trace value of the modular-surface testbed.  eigenvalue is
// the larger root of X^2 - trace*X + 1 = 0, i.e. (t + sqrt(t^2-4))/2, the
// fundamental Pell-type solution attached to the trace; the primitive norm
// is eigenvalue^2 and the primitive length 2*log(eigenvalue).
struct TraceClass {
    std::int64_t trace = 0;
    std::int64_t discriminant = 0;
    std::int64_t class_count = 0;
    double eigenvalue = 0.0;
};

double eigenvalue_for_trace(std::int64_t t);

// Norm and length of the k-th power of a primitive class of trace t0.
double power_norm(std::int64_t t0, int k);
double power_length(std::int64_t t0, int k);

// Number of primitive hyperbolic conjugacy classes of trace t.  Computed as
// the number of reduction cycles of integral indefinite binary quadratic
// forms of discriminant t^2 - 4 (all contents included, matching matrix
// classes one-to-one) minus the classes accounted for by proper powers of
// smaller traces.  Exact integer arithmetic throughout.
std::int64_t class_count_for_trace(std::int64_t t);

// All trace classes with primitive norm (eigenvalue^2) <= norm_bound, sorted
// by trace.  threads > 1 partitions the trace range across workers; the
// result does not depend on the partition.
std::vector<TraceClass> trace_classes(double norm_bound, int threads = 1);

// The modular-surface length spectrum up to norm_bound: one record per
// (trace, power) pair with the class count as multiplicity.
LengthSpectrum enumerate_spectrum(double norm_bound, int threads = 1);

// Independent oracle: enumerates integer matrices with det 1 and the given
// trace directly, groups them into conjugacy classes by breadth-first
// conjugator search, and classifies powers by extracting integral roots.
// entry_bound must be large enough that every class with norm <= norm_bound
// has a representative with entries within it; every class of trace t has a
// reduced representative with entries below sqrt(t^2-4) + t, so
// entry_bound >= 2*sqrt(norm_bound) + 8 covers the whole range.  Too small
// a bound can undercount classes.
LengthSpectrum brute_force_spectrum(double norm_bound, std::int64_t entry_bound);

} // namespace pgt::spectrum

#endif
