#include "pgt/gallagher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <utility>

#include "pgt/chebyshev.hpp"
#include "pgt/errors.hpp"
#include "pgt/explicit_formulas.hpp"
#include "pgt/stats.hpp"

namespace pgt::gallagher {

namespace {

double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

// All three O-term exponents of the log-free pipeline at d = x^(1-rho/n),
// K = x^(rho/n); they collapse to 2*rho - rho/n for every j, which is the
// whole point of the pipeline.
Rational unconditional_exponent(const ManifoldParams& params, int j) {
    const Rational rho = params.rho;
    const Rational n_rat(params.n);
    const Rational d_exp = Rational(1) - rho / n_rat;
    const Rational k_exp = rho / n_rat;
    const Rational smoothing = Rational(2) * rho - Rational(1) + d_exp;
    const Rational truncated_sum = rho + k_exp * Rational(params.n - 1);
    const Rational tail = Rational(-j) * d_exp + rho + Rational(j) + k_exp * Rational(params.n - 1 - j);
    if (!(smoothing == truncated_sum) || !(truncated_sum == tail))
        throw std::logic_error("unconditional pipeline exponents disagree");
    return smoothing;
}

} // namespace

double forward_difference(const std::function<double(double)>& f, double x, double d, int j) {
    if (!(d > 0.0)) throw ValidationError("forward_difference: d must be positive");
    if (j < 1 || j > 60) throw ValidationError("forward_difference: j outside supported range [1, 60]");
    double acc = 0.0;
    std::int64_t binom = 1;
    for (int k = 0; k <= j; ++k) {
        const double term = static_cast<double>(binom) * f(x + k * d);
        acc += ((j - k) % 2 == 0) ? term : -term;
        if (k < j) binom = binom * (j - k) / (k + 1); // exact: C(j,k+1)
    }
    return acc;
}

SmoothingPlan solve_plan(const ManifoldParams& params, int j, double epsilon) {
    if (j < 1) throw ValidationError("solve_plan: j must be >= 1");
    if (!(epsilon > 0.0)) throw ValidationError("solve_plan: epsilon must be positive");
    const int n = params.n;
    if (2 * j + 3 - 2 * n <= 0)
        throw ValidationError("solve_plan: j must be >= n-1 (the balance system divides by 2j+3-2n)");

    const Rational rho = params.rho;
    const Rational q(2 * j + 3 - 2 * n);
    const Rational jp1(j + 1);
    const Rational nm1(n - 1);
    const Rational one(1), two(2);

    // beta * (2j+3-2n) = (j+1)(n-1)(1 - 2*beta)  =>  collect beta terms.
    const Rational denom = q + two * jp1 * nm1; // = 2nj+1
    const Rational beta = jp1 * nm1 / denom;

    // Same elimination on the gamma equation after clearing (j+1) and q.
    const Rational gamma =
        (q * jp1 * (one - rho) + jp1 * nm1 * (two * rho + Rational(2 * j)) + q * (two * rho - one)) / denom;

    SmoothingPlan plan;
    plan.j = j;
    plan.epsilon = epsilon;
    plan.gamma_exp = gamma;
    plan.beta = beta;
    // d^(j+1) = x^(gamma-2*rho+1) (log x)^beta (log log x)^beta.
    plan.d_exponents = {(gamma - two * rho + one) / jp1, beta / jp1, beta / jp1};
    // d^(2j+2) * Y^(2j+3-2n) = x^(2j+2-2*rho) * log x * log log x.
    const Rational twice_jp1 = two * jp1;
    plan.y_exponents = {(twice_jp1 - two * rho - twice_jp1 * plan.d_exponents.x_exp) / q,
                        (one - twice_jp1 * plan.d_exponents.log_exp) / q,
                        (one - twice_jp1 * plan.d_exponents.loglog_exp) / q};
    plan.conditional = (j == n - 1);
    return plan;
}

Rational psi0_error_x_exponent(const ManifoldParams& params, int j) {
    const SmoothingPlan plan = solve_plan(params, j, 1.0);
    return plan.d_exponents.x_exp + params.two_rho() - Rational(1);
}

Rational psi0_error_log_exponent(const ManifoldParams& params, int j) {
    return solve_plan(params, j, 1.0).d_exponents.log_exp;
}

std::vector<Rational> exponent_sequence(const ManifoldParams& params, int j_min, int j_max) {
    if (j_max < j_min) throw ValidationError("exponent_sequence: empty j range");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(j_max - j_min + 1));
    for (int j = j_min; j <= j_max; ++j) out.push_back(psi0_error_x_exponent(params, j));
    return out;
}

double smooth_psi0_estimate(const std::function<double(double)>& psi_j_eval, const SmoothingPlan& plan,
                            double x) {
    if (!(x > std::exp(std::exp(1.0))))
        throw ValidationError("smooth_psi0_estimate: x must exceed e^e (the window uses log log x)");
    const double lx = std::log(x);
    const double llx = std::log(lx);
    const double d = std::exp(plan.d_exponents.x_exp.to_double() * lx +
                              plan.d_exponents.log_exp.to_double() * std::log(lx) +
                              plan.d_exponents.loglog_exp.to_double() * std::log(llx));
    if (d > x) throw ValidationError("smooth_psi0_estimate: window d(x) exceeds x; x is too small for this plan");
    return forward_difference(psi_j_eval, x, d, plan.j) / ipow(d, plan.j);
}

double threshold_value(const SmoothingPlan& plan, const ManifoldParams& params, double x,
                       RemainderLevel level) {
    if (!(x > std::exp(1.0))) throw ValidationError("threshold_value: x must exceed e");
    const Rational gamma_prime = (level == RemainderLevel::PsiJ)
                                     ? plan.gamma_exp
                                     : plan.d_exponents.x_exp + params.two_rho() - Rational(1);
    const double lx = std::log(x);
    const double beta = plan.beta.to_double();
    return std::pow(x, gamma_prime.to_double()) * std::pow(lx, beta) *
           std::pow(std::log(lx), beta + plan.epsilon);
}

ExceptionalReport exceptional_report(const std::function<double(double)>& remainder,
                                     const SmoothingPlan& plan, const ManifoldParams& params, int i_min,
                                     int i_max, int grid_density, RemainderLevel level, int threads) {
    if (i_max < i_min) throw ValidationError("exceptional_report: empty i range");
    if (i_min < 1) throw ValidationError("exceptional_report: i_min must be >= 1");
    if (grid_density < 1) throw ValidationError("exceptional_report: grid_density must be >= 1");

    const int count = i_max - i_min + 1;
    ExceptionalReport report;
    report.intervals.resize(static_cast<std::size_t>(count));

    auto run_interval = [&](int idx) {
        const int i = i_min + idx;
        int exceed = 0;
        for (int m = 0; m < grid_density; ++m) {
            const double x = std::exp(i + (m + 0.5) / grid_density);
            if (std::fabs(remainder(x)) > threshold_value(plan, params, x, level)) ++exceed;
        }
        report.intervals[static_cast<std::size_t>(idx)] =
            IntervalMeasure{i, static_cast<double>(exceed) / grid_density};
    };

    const int workers = std::max(1, threads);
    if (workers == 1 || count == 1) {
        for (int idx = 0; idx < count; ++idx) run_interval(idx);
    } else {
        std::vector<std::future<void>> futures;
        const int chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(lo + chunk, count);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (int idx = lo; idx < hi; ++idx) run_interval(idx);
            }));
        }
        for (auto& f : futures) f.get();
    }

    double total = 0.0;
    for (const IntervalMeasure& im : report.intervals) total += im.exceed_measure;
    report.total_measure = total;
    return report;
}

ConvergeResult converge_check(const ExceptionalReport& report, double epsilon) {
    if (report.intervals.size() < 5) throw ValidationError("converge_check: need at least 5 intervals");
    if (!(epsilon > 0.0)) throw ValidationError("converge_check: epsilon must be positive");
    std::vector<double> z, y;
    for (const IntervalMeasure& im : report.intervals) {
        if (im.i < 2 || !(im.exceed_measure > 0.0)) continue;
        const double log_i = std::log(static_cast<double>(im.i));
        z.push_back(std::log(static_cast<double>(im.i)) + (1.0 + 2.0 * epsilon) * std::log(log_i));
        y.push_back(std::log(im.exceed_measure));
    }
    if (z.size() < 3) return {true, -std::numeric_limits<double>::infinity()};
    const LinearFit fit = linear_fit(z, y);
    return {fit.slope <= -1.0 + 2.0 * fit.slope_stderr, fit.slope};
}

UnconditionalResult unconditional_psi0(const LengthSpectrum& spectrum, const ManifoldParams& params,
                                       int j, double x) {
    if (j < params.n)
        throw ValidationError("unconditional_psi0: j must be >= n = " + std::to_string(params.n));
    if (!(x > 1.0)) throw ValidationError("unconditional_psi0: x must be > 1");
    const double d = std::pow(x, 1.0 - params.rho_d() / params.n);
    auto f = [&](double t) { return chebyshev::psi_j(spectrum, t, j); };
    const double estimate = forward_difference(f, x, d, j) / ipow(d, j);
    return {estimate, unconditional_exponent(params, j)};
}

UnconditionalResult unconditional_psi0(const SingularityCatalog& catalog, const ManifoldParams& params,
                                       int j, double x) {
    if (j < params.n)
        throw ValidationError("unconditional_psi0: j must be >= n = " + std::to_string(params.n));
    if (!(x > 1.0)) throw ValidationError("unconditional_psi0: x must be > 1");
    const double d = std::pow(x, 1.0 - params.rho_d() / params.n);
    const double truncation = std::pow(x, params.rho_d() / params.n);
    auto f = [&](double t) { return formulas::explicit_psi_j(catalog, t, j, truncation); };
    const double estimate = forward_difference(f, x, d, j) / ipow(d, j);
    return {estimate, unconditional_exponent(params, j)};
}

double gallagher_tail_integral(const SingularityCatalog& catalog, int j, double y, double w) {
    if (!(y > 0.0) || !(w > y)) throw ValidationError("gallagher_tail_integral: need 0 < y < w");
    if (j < 0) throw ValidationError("gallagher_tail_integral: j must be >= 0");

    std::vector<std::pair<double, double>> height_weight;
    for (const Channel& channel : catalog.channels)
        for (const Singularity& s : channel.critical_singularities) {
            const double h = std::fabs(s.alpha.imag());
            if (!(h > y) || h > w) continue;
            double denom = 1.0;
            for (int k = 0; k <= j; ++k) denom *= std::abs(s.alpha + static_cast<double>(k));
            height_weight.emplace_back(h, std::abs(static_cast<double>(s.order)) / denom);
        }
    if (height_weight.empty()) return 0.0;
    std::sort(height_weight.begin(), height_weight.end());

    const std::size_t m = height_weight.size();
    std::vector<double> heights(m), prefix(m + 1, 0.0);
    for (std::size_t idx = 0; idx < m; ++idx) {
        heights[idx] = height_weight[idx].first;
        prefix[idx + 1] = prefix[idx] + height_weight[idx].second;
    }

    // The inner sum is piecewise constant in t, changing only where the
    // window [t, t+1] picks up or drops a height, i.e. at t = h-1 and t = h.
    std::vector<double> events;
    events.reserve(2 * m);
    for (double h : heights) {
        events.push_back(h - 1.0);
        events.push_back(h);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    double integral = 0.0;
    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
        const double t0 = events[e], t1 = events[e + 1];
        const double mid = 0.5 * (t0 + t1);
        const auto lo = std::lower_bound(heights.begin(), heights.end(), mid) - heights.begin();
        const auto hi = std::upper_bound(heights.begin(), heights.end(), mid + 1.0) - heights.begin();
        const double s = prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
        integral += s * s * (t1 - t0);
    }
    return integral;
}

} // namespace pgt::gallagher
