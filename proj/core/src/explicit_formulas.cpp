#include "pgt/explicit_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>

#include "pgt/errors.hpp"

namespace pgt::formulas {

namespace {

constexpr double kDenominatorFloor = 1e-12;

struct ChannelSum {
    std::complex<double> value{0.0, 0.0};
    double gross = 0.0; // sum of |term|, scales the residue tolerance
};

std::complex<double> singularity_term(const std::complex<double>& alpha, int order, double log_x,
                                      int j) {
    std::complex<double> denom{1.0, 0.0};
    for (int k = 0; k <= j; ++k) {
        const std::complex<double> factor = alpha + static_cast<double>(k);
        if (std::abs(factor) < kDenominatorFloor)
            throw ValidationError("explicit formula: denominator factor alpha + " + std::to_string(k) +
                                  " vanishes at alpha = (" + std::to_string(alpha.real()) + ", " +
                                  std::to_string(alpha.imag()) + ")");
        denom *= factor;
    }
    const std::complex<double> power =
        std::exp((alpha + static_cast<double>(j)) * log_x);
    return static_cast<double>(order) * power / denom;
}

// Critical entries ordered by |Im|, negative branch first, so each conjugate
// pair is summed adjacently and its imaginary parts cancel.
std::vector<const Singularity*> ordered_critical(const Channel& channel) {
    std::vector<const Singularity*> out;
    out.reserve(channel.critical_singularities.size());
    for (const Singularity& s : channel.critical_singularities) out.push_back(&s);
    std::sort(out.begin(), out.end(), [](const Singularity* a, const Singularity* b) {
        const double ia = std::fabs(a->alpha.imag()), ib = std::fabs(b->alpha.imag());
        if (ia != ib) return ia < ib;
        return a->alpha.imag() < b->alpha.imag();
    });
    return out;
}

void check_residue(const std::complex<double>& total, double gross) {
    if (std::fabs(total.imag()) > 1e-8 * std::fabs(total.real()) + 1e-13 * gross)
        throw ValidationError("explicit formula: imaginary residue " + std::to_string(total.imag()) +
                              " exceeds tolerance; catalog is not conjugate-closed");
}

} // namespace

double explicit_psi_j(const SingularityCatalog& catalog, double x, int j, double y_max, int threads) {
    if (!(x > 1.0)) throw ValidationError("explicit_psi_j: x must be > 1");
    if (j < catalog.params.n)
        throw ValidationError("explicit_psi_j: j must be >= n = " + std::to_string(catalog.params.n));

    const double rho = catalog.params.rho_d();
    const double two_rho = 2.0 * rho;
    const double log_x = std::log(x);

    auto eval_channel = [&](const Channel& channel) {
        ChannelSum acc;
        for (const Singularity& s : channel.real_singularities) {
            const double re = s.alpha.real();
            if (!(re > rho) || re > two_rho + 1e-12 * std::max(1.0, two_rho)) continue;
            const std::complex<double> term = singularity_term(s.alpha, s.order, log_x, j);
            acc.value += term;
            acc.gross += std::abs(term);
        }
        const bool spherical = std::fabs(channel.lambda - two_rho) <= 1e-12 * std::max(1.0, two_rho);
        if (spherical) {
            for (const Singularity* s : ordered_critical(channel)) {
                if (std::fabs(s->alpha.imag()) > y_max) continue;
                const std::complex<double> term = singularity_term(s->alpha, s->order, log_x, j);
                acc.value += term;
                acc.gross += std::abs(term);
            }
        }
        acc.value *= static_cast<double>(channel.sign);
        return acc;
    };

    std::vector<ChannelSum> sums(catalog.channels.size());
    const int workers = std::max(1, threads);
    if (workers == 1 || catalog.channels.size() < 2) {
        for (std::size_t i = 0; i < catalog.channels.size(); ++i) sums[i] = eval_channel(catalog.channels[i]);
    } else {
        std::vector<std::future<void>> futures;
        const std::size_t chunk = (catalog.channels.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(lo + chunk, catalog.channels.size());
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, [&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) sums[i] = eval_channel(catalog.channels[i]);
            }));
        }
        for (auto& f : futures) f.get();
    }

    std::complex<double> total{0.0, 0.0};
    double gross = 0.0;
    for (const ChannelSum& s : sums) {
        total += s.value;
        gross += s.gross;
    }
    check_residue(total, gross);
    return total.real();
}

ConditionalPsiResult explicit_psi_nminus1(const SingularityCatalog& catalog,
                                          const ConditionalPsiConfig& config, double x) {
    if (!(x > 1.0)) throw ValidationError("explicit_psi_nminus1: x must be > 1");
    const int n = catalog.params.n;
    const double rho = catalog.params.rho_d();
    const double T = config.truncation_height;
    if (!(T > 0.0)) throw ValidationError("explicit_psi_nminus1: truncation height must be positive");
    if (!(config.epsilon1 > 0.0)) throw ValidationError("explicit_psi_nminus1: epsilon1 must be positive");
    if (config.delta < 0.0 || config.delta >= 1.0)
        throw ValidationError("explicit_psi_nminus1: delta must lie in [0, 1)");
    if (config.poly_log_coeffs.size() > static_cast<std::size_t>(n) ||
        config.poly_coeffs.size() > static_cast<std::size_t>(n))
        throw ValidationError("explicit_psi_nminus1: coefficient lists longer than n");
    for (const Channel& channel : catalog.channels)
        for (const Singularity& s : channel.real_singularities) {
            const double re = s.alpha.real();
            for (int k = 0; k < n; ++k)
                if (std::fabs(re + k) < kDenominatorFloor)
                    throw ValidationError(
                        "explicit_psi_nminus1: real singularity at excluded integer " + std::to_string(-k));
        }

    const double log_x = std::log(x);
    const int j = n - 1;

    std::complex<double> total{0.0, 0.0};
    double gross = 0.0;
    for (std::size_t m = 0; m < config.poly_log_coeffs.size(); ++m) {
        const double term = config.poly_log_coeffs[m] * std::pow(x, static_cast<double>(n - 1 - static_cast<int>(m))) * log_x;
        total += term;
        gross += std::fabs(term);
    }
    for (std::size_t m = 0; m < config.poly_coeffs.size(); ++m) {
        const double term = config.poly_coeffs[m] * std::pow(x, static_cast<double>(n - 1 - static_cast<int>(m)));
        total += term;
        gross += std::fabs(term);
    }

    for (const Channel& channel : catalog.channels) {
        ChannelSum acc;
        for (const Singularity& s : channel.real_singularities) {
            const std::complex<double> term = singularity_term(s.alpha, s.order, log_x, j);
            acc.value += term;
            acc.gross += std::abs(term);
        }
        for (const Singularity* s : ordered_critical(channel)) {
            if (std::fabs(s->alpha.imag()) > T) continue;
            const std::complex<double> term = singularity_term(s->alpha, s->order, log_x, j);
            acc.value += term;
            acc.gross += std::abs(term);
        }
        total += static_cast<double>(channel.sign) * acc.value;
        gross += acc.gross;
    }

    check_residue(total, gross);
    ConditionalPsiResult out;
    out.value = total.real();
    out.reported_bound = std::pow(x, 2.0 * rho + config.epsilon1 + (n - 1)) /
                         (config.epsilon1 * std::pow(T, 1.0 - config.delta));
    return out;
}

SingularityCatalog weyl_sample(const ManifoldParams& params, double c1, double height,
                               const WeylChannelSpec& spec) {
    if (!(c1 > 0.0)) throw ValidationError("weyl_sample: c1 must be positive");
    if (!(height > 0.0)) throw ValidationError("weyl_sample: height must be positive");

    const double rho = params.rho_d();
    Channel channel;
    channel.p = spec.p;
    channel.tau = spec.tau;
    channel.lambda = std::isnan(spec.lambda) ? 2.0 * rho : spec.lambda;
    channel.sign = expected_channel_sign(spec.p);
    channel.real_singularities = spec.real_singularities;

    const double count_d = c1 * std::pow(height, params.n);
    const auto count = static_cast<std::int64_t>(count_d);
    channel.critical_singularities.reserve(static_cast<std::size_t>(2 * count));
    for (std::int64_t k = 1; k <= count; ++k) {
        const double gamma_k = std::pow(static_cast<double>(k) / c1, 1.0 / params.n);
        channel.critical_singularities.push_back({{rho, gamma_k}, 1});
        channel.critical_singularities.push_back({{rho, -gamma_k}, 1});
    }

    SingularityCatalog catalog;
    catalog.params = params;
    catalog.weyl_constant = c1;
    catalog.channels.push_back(std::move(channel));
    return catalog;
}

double main_term(const ManifoldParams& params, double x) {
    const double two_rho = 2.0 * params.rho_d();
    return std::pow(x, two_rho) / two_rho;
}

double critical_tail_majorant(const SingularityCatalog& catalog, int j, double y) {
    double total = 0.0;
    for (const Channel& channel : catalog.channels)
        for (const Singularity& s : channel.critical_singularities) {
            if (std::fabs(s.alpha.imag()) <= y) continue;
            double denom = 1.0;
            for (int k = 0; k <= j; ++k) denom *= std::abs(s.alpha + static_cast<double>(k));
            total += std::abs(static_cast<double>(s.order)) / denom;
        }
    return total;
}

} // namespace pgt::formulas
