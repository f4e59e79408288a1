#ifndef PGT_EXPERIMENT_HPP
#define PGT_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pgt/types.hpp"

// Experiment plumbing shared by the CLI: regression of empirical exponents,
// the counting-vs-prediction comparison table, geometric grid specs, and
// reproducible run manifests.
namespace pgt::experiment {

// Geometric evaluation grid x_k = x0 * ratio^k, k = 0 .. count-1, written as
// "x0:ratio:count".
struct GridSpec {
    double x0 = 0.0;
    double ratio = 0.0;
    int count = 0;

    static GridSpec parse(const std::string& text);
    std::vector<double> points() const;
    std::string str() const;
};

struct FitResult {
    double slope = 0.0;
    double slope_stderr = 0.0;
};

// Least-squares slope of log|remainder| against log x.  Zero remainders are
// skipped (log undefined); fewer than 10 surviving points is an error.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& series);

enum class CompareMode { Gallagher, Unconditional };

struct CompareRow {
    double x = 0.0;
    std::int64_t prime_count = 0;
    double li_sum = 0.0;
    double remainder = 0.0;
    double bound = 0.0;
};

// Per-x comparison of the prime count against the predicted main terms: the
// li sum runs over catalog real singularities with alpha in (cutoff, 2*rho],
// cutoff = 2*rho - rho(2j+1)/(2nj+1) in Gallagher mode and 2*rho - rho/n in
// unconditional mode; remainder = count - li_sum; bound is the mode's error
// term at the prime-counting level, x^g0 (log x)^(b0-1) (log log x)^(b0+eps)
// resp. x^(2*rho-rho/n) / log x.  The spectrum must be complete up to the
// grid maximum.
std::vector<CompareRow> pgt_compare(const LengthSpectrum& spectrum, const SingularityCatalog& catalog,
                                    const ManifoldParams& params, CompareMode mode, int j, double epsilon,
                                    const std::vector<double>& grid);

std::string compare_rows_to_csv(const std::vector<CompareRow>& rows,
                                const std::vector<std::string>& comments = {});

// FNV-1a 64-bit content hash, printed as 16 hex digits; used to fingerprint
// input files in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string content_digest(const std::string& bytes);

// Key-value run manifest.  text() renders sorted "key=value" lines, so equal
// parameter sets produce equal digests regardless of insertion order.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, int value);

    const std::map<std::string, std::string>& entries() const { return entries_; }
    std::string text() const;
    std::string digest() const; // FNV-1a of text()

private:
    std::map<std::string, std::string> entries_;
};

} // namespace pgt::experiment

#endif
