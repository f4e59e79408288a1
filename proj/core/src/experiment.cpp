#include "pgt/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "pgt/chebyshev.hpp"
#include "pgt/errors.hpp"
#include "pgt/gallagher.hpp"
#include "pgt/io.hpp"
#include "pgt/stats.hpp"

namespace pgt::experiment {

namespace {

double parse_positive_double(const std::string& text, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw ValidationError(std::string("grid spec: bad ") + what + " '" + text + "'");
    if (!(v > 0.0)) throw ValidationError(std::string("grid spec: ") + what + " must be positive");
    return v;
}

} // namespace

GridSpec GridSpec::parse(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = (c1 == std::string::npos) ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ValidationError("grid spec must be 'x0:ratio:count', got '" + text + "'");
    GridSpec spec;
    spec.x0 = parse_positive_double(text.substr(0, c1), "x0");
    spec.ratio = parse_positive_double(text.substr(c1 + 1, c2 - c1 - 1), "ratio");
    const std::string count_text = text.substr(c2 + 1);
    char* end = nullptr;
    const long count = std::strtol(count_text.c_str(), &end, 10);
    if (end != count_text.c_str() + count_text.size() || count_text.empty() || count < 0)
        throw ValidationError("grid spec: bad count '" + count_text + "'");
    spec.count = static_cast<int>(count);
    return spec;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    double x = x0;
    for (int k = 0; k < count; ++k) {
        out.push_back(x);
        x *= ratio;
    }
    return out;
}

std::string GridSpec::str() const {
    return io::format_g17(x0) + ":" + io::format_g17(ratio) + ":" + std::to_string(count);
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& series) {
    std::vector<double> lx, ly;
    for (const auto& [x, remainder] : series) {
        if (remainder == 0.0) continue;
        if (!(x > 0.0)) throw ValidationError("fit_exponent: x values must be positive");
        lx.push_back(std::log(x));
        ly.push_back(std::log(std::fabs(remainder)));
    }
    if (lx.size() < 10)
        throw ValidationError("fit_exponent: need at least 10 nonzero remainders, got " +
                              std::to_string(lx.size()));
    const LinearFit fit = linear_fit(lx, ly);
    return {fit.slope, fit.slope_stderr};
}

std::vector<CompareRow> pgt_compare(const LengthSpectrum& spectrum, const SingularityCatalog& catalog,
                                    const ManifoldParams& params, CompareMode mode, int j, double epsilon,
                                    const std::vector<double>& grid) {
    if (!(epsilon > 0.0)) throw ValidationError("pgt_compare: epsilon must be positive");
    for (double x : grid)
        if (x > spectrum.norm_bound() * (1.0 + kFieldConsistencyTol))
            throw IncompleteDataError("pgt_compare: grid point " + std::to_string(x) +
                                      " exceeds spectrum norm_bound");

    const Rational two_rho = params.two_rho();
    Rational cutoff;
    Rational bound_x_exp;
    Rational beta0;
    if (mode == CompareMode::Gallagher) {
        bound_x_exp = gallagher::psi0_error_x_exponent(params, j);
        beta0 = gallagher::psi0_error_log_exponent(params, j);
        cutoff = bound_x_exp; // 2*rho - rho(2j+1)/(2nj+1)
    } else {
        bound_x_exp = two_rho - params.rho / Rational(params.n);
        cutoff = bound_x_exp;
    }

    std::vector<CompareRow> rows;
    rows.reserve(grid.size());
    for (double x : grid) {
        CompareRow row;
        row.x = x;
        row.prime_count = chebyshev::pi_gamma(spectrum, x);
        double li_sum = 0.0;
        for (const Channel& channel : catalog.channels)
            for (const Singularity& s : channel.real_singularities) {
                const double alpha = s.alpha.real();
                if (!(alpha > cutoff.to_double()) ||
                    alpha > two_rho.to_double() + 1e-12 * std::max(1.0, two_rho.to_double()))
                    continue;
                li_sum += channel.sign * s.order * chebyshev::li(std::pow(x, alpha));
            }
        row.li_sum = li_sum;
        row.remainder = static_cast<double>(row.prime_count) - li_sum;
        const double lx = std::log(x);
        if (mode == CompareMode::Gallagher) {
            const double b0 = beta0.to_double();
            // At the prime-counting level the log exponent drops by one.
            row.bound = std::pow(x, bound_x_exp.to_double()) * std::pow(lx, b0 - 1.0) *
                        std::pow(std::log(lx), b0 + epsilon);
        } else {
            row.bound = std::pow(x, bound_x_exp.to_double()) / lx;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string compare_rows_to_csv(const std::vector<CompareRow>& rows,
                                const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const std::string& c : comments) os << "# " << c << "\n";
    os << "x,pi_gamma,li_sum,remainder,bound\n";
    for (const CompareRow& r : rows)
        os << io::format_g17(r.x) << ',' << r.prime_count << ',' << io::format_g17(r.li_sum) << ','
           << io::format_g17(r.remainder) << ',' << io::format_g17(r.bound) << "\n";
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string content_digest(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

void Manifest::set(const std::string& key, const std::string& value) { entries_[key] = value; }
void Manifest::set(const std::string& key, double value) { entries_[key] = io::format_g17(value); }
void Manifest::set(const std::string& key, std::int64_t value) { entries_[key] = std::to_string(value); }
void Manifest::set(const std::string& key, int value) { entries_[key] = std::to_string(value); }

std::string Manifest::text() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << '=' << v << "\n";
    return os.str();
}

std::string Manifest::digest() const { return content_digest(text()); }

} // namespace pgt::experiment
