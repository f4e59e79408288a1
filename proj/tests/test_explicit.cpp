#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pgt/errors.hpp"
#include "pgt/explicit_formulas.hpp"
#include "pgt/stats.hpp"
#include "pgt/validate.hpp"

namespace fm = pgt::formulas;
using pgt::Rational;

namespace {

pgt::SingularityCatalog single_real_catalog(double alpha, int n = 2) {
    pgt::SingularityCatalog catalog;
    catalog.params = pgt::ManifoldParams::real_hyperbolic(n);
    pgt::Channel ch;
    ch.p = 1;
    ch.tau = "std";
    ch.lambda = 2.0 * catalog.params.rho_d();
    ch.sign = 1;
    ch.real_singularities.push_back({{alpha, 0.0}, 1});
    catalog.channels.push_back(ch);
    return catalog;
}

} // namespace

TEST_SUITE_BEGIN("explicit");

TEST_CASE("single real singularity reproduces the power term") {
    // alpha = 2*rho = 1, j = 2: x^3 / (1*2*3).
    const pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    CHECK(fm::explicit_psi_j(catalog, 10.0, 2) == doctest::Approx(1000.0 / 6.0).epsilon(1e-14));
    CHECK(fm::explicit_psi_j(catalog, 50.0, 3) ==
          doctest::Approx(std::pow(50.0, 4) / 24.0).epsilon(1e-14));
}

TEST_CASE("order-j values scale as (alpha+j+1)/x between consecutive j") {
    const pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    const double x = 50.0;
    const double r32 = fm::explicit_psi_j(catalog, x, 2) / fm::explicit_psi_j(catalog, x, 3);
    CHECK(r32 == doctest::Approx((1.0 + 2.0 + 1.0) / x).epsilon(1e-13));
}

TEST_CASE("real singularities outside (rho, 2rho] are ignored") {
    pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    catalog.channels[0].real_singularities.push_back({{0.25, 0.0}, 1});  // below rho
    catalog.channels[0].real_singularities.push_back({{0.5, 0.0}, 1});   // at rho: excluded
    const pgt::SingularityCatalog plain = single_real_catalog(1.0);
    CHECK(fm::explicit_psi_j(catalog, 10.0, 2) == fm::explicit_psi_j(plain, 10.0, 2));
}

TEST_CASE("conjugate pairs produce a real oscillation term") {
    pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    const double gamma = 3.0;
    catalog.channels[0].critical_singularities.push_back({{0.5, gamma}, 1});
    catalog.channels[0].critical_singularities.push_back({{0.5, -gamma}, 1});

    const double x = 25.0;
    const int j = 2;
    std::complex<double> alpha(0.5, gamma);
    std::complex<double> den = alpha * (alpha + 1.0) * (alpha + 2.0);
    const double pair = 2.0 * (std::exp((alpha + 2.0) * std::log(x)) / den).real();
    const double base = 25.0 * 25.0 * 25.0 / 6.0;
    CHECK(fm::explicit_psi_j(catalog, x, j) == doctest::Approx(base + pair).epsilon(1e-12));
}

TEST_CASE("channel signs multiply the channel sums") {
    pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    pgt::SingularityCatalog flipped = catalog;
    flipped.channels[0].p = 2;    // sign becomes -1
    flipped.channels[0].sign = -1;
    CHECK(fm::explicit_psi_j(flipped, 10.0, 2) == -fm::explicit_psi_j(catalog, 10.0, 2));
}

TEST_CASE("critical sums only engage lambda = 2rho channels") {
    pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    pgt::Channel extra;
    extra.p = 0;
    extra.tau = "aux";
    extra.lambda = 0.5; // not 2*rho: its critical list must be inert
    extra.sign = -1;
    extra.critical_singularities.push_back({{0.5, 2.0}, 1});
    extra.critical_singularities.push_back({{0.5, -2.0}, 1});
    catalog.channels.push_back(extra);
    const pgt::SingularityCatalog plain = single_real_catalog(1.0);
    CHECK(fm::explicit_psi_j(catalog, 10.0, 2) == fm::explicit_psi_j(plain, 10.0, 2));
}

TEST_CASE("unpaired critical singularities are rejected") {
    pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    catalog.channels[0].critical_singularities.push_back({{0.5, 5.0}, 1});
    CHECK_THROWS_AS(fm::explicit_psi_j(catalog, 10.0, 2), pgt::ValidationError);
}

TEST_CASE("order below n is rejected") {
    const pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    CHECK_THROWS_AS(fm::explicit_psi_j(catalog, 10.0, 1), pgt::ValidationError);
    CHECK_THROWS_AS(fm::explicit_psi_j(catalog, 0.5, 2), pgt::ValidationError);
}

TEST_CASE("weyl_sample heights follow the counting law") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    const pgt::SingularityCatalog catalog = fm::weyl_sample(params, 1.0, 3.0);
    REQUIRE(catalog.channels.size() == 1);
    const auto& crit = catalog.channels[0].critical_singularities;
    CHECK(crit.size() == 18); // floor(1 * 3^2) = 9 conjugate pairs
    // Heights sqrt(1), sqrt(2), ..., sqrt(9), each with Re = rho.
    int positive = 0;
    for (const auto& s : crit) {
        CHECK(s.alpha.real() == doctest::Approx(0.5).epsilon(1e-15));
        if (s.alpha.imag() > 0) ++positive;
    }
    CHECK(positive == 9);
    CHECK(pgt::validate_catalog(catalog).empty());

    // Counting up to y = 5 with c1 = 2: floor(2 * 25) = 50 pairs.
    const pgt::SingularityCatalog c2 = fm::weyl_sample(params, 2.0, 10.0);
    int below = 0;
    for (const auto& s : c2.channels[0].critical_singularities)
        if (s.alpha.imag() > 0 && s.alpha.imag() <= 5.0) ++below;
    CHECK(below == 50);
}

TEST_CASE("truncation error is bounded by the tail majorant") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    pgt::SingularityCatalog catalog = fm::weyl_sample(params, 1.0, 100.0);
    const double x = std::exp(3.0);
    const int j = 2;
    const double full = fm::explicit_psi_j(catalog, x, j);
    for (double y : {10.0, 20.0, 40.0}) {
        const double truncated = fm::explicit_psi_j(catalog, x, j, y);
        const double majorant = std::pow(x, 0.5 + j) * fm::critical_tail_majorant(catalog, j, y);
        CHECK(std::fabs(full - truncated) <= majorant * (1.0 + 1e-12));
    }
    // Majorant of the empty tail vanishes.
    CHECK(fm::critical_tail_majorant(catalog, j, 100.0) == 0.0);
}

TEST_CASE("tail majorant decays like a power of the cut height") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    const pgt::SingularityCatalog catalog = fm::weyl_sample(params, 1.0, 400.0);
    const int j = 2;
    std::vector<double> lx, ly;
    for (double y = 10.0; y <= 80.0; y *= 1.5) {
        lx.push_back(std::log(y));
        ly.push_back(std::log(fm::critical_tail_majorant(catalog, j, y)));
    }
    const pgt::LinearFit fit = pgt::linear_fit(lx, ly);
    // Terms are ~ t^-(j+1) against the height density ~ t, so the tail sum
    // behaves like y^-(j-1); j = 2 gives slope -1, steepened slightly by the
    // finite catalog height.
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.2));
}

TEST_CASE("explicit evaluation matches extended-precision re-summation") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    pgt::SingularityCatalog catalog = fm::weyl_sample(params, 1.0, 50.0);
    catalog.channels[0].real_singularities.push_back({{1.0, 0.0}, 1});
    const double x = std::exp(10.0);
    for (int j : {2, 3}) {
        const double fast = fm::explicit_psi_j(catalog, x, j);
        const std::complex<long double> slow =
            oracles::ld_explicit_psi_j(catalog, x, j, std::numeric_limits<double>::infinity());
        CHECK(std::fabs(fast - static_cast<double>(slow.real())) <=
              1e-8 * std::fabs(static_cast<double>(slow.real())));
    }
}

TEST_CASE("thread count does not change explicit values") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    pgt::SingularityCatalog catalog = fm::weyl_sample(params, 1.0, 60.0);
    // Give it several channels so the parallel path has real work.
    for (int extra = 0; extra < 3; ++extra) {
        pgt::Channel ch = catalog.channels[0];
        ch.p = (extra % 2 == 0) ? 0 : 1;
        ch.sign = pgt::expected_channel_sign(ch.p);
        ch.tau = "aux" + std::to_string(extra);
        catalog.channels.push_back(ch);
    }
    const double x = std::exp(6.0);
    CHECK(fm::explicit_psi_j(catalog, x, 2, 1e9, 1) == fm::explicit_psi_j(catalog, x, 2, 1e9, 4));
}

TEST_CASE("main term evaluates x^(2rho)/(2rho)") {
    CHECK(fm::main_term(pgt::ManifoldParams(2, Rational(1, 2)), 100.0) ==
          doctest::Approx(100.0).epsilon(1e-15));
    CHECK(fm::main_term(pgt::ManifoldParams(3, Rational(1)), 10.0) ==
          doctest::Approx(50.0).epsilon(1e-15));
    CHECK(fm::main_term(pgt::ManifoldParams(4, Rational(3, 2)), std::exp(2.0)) ==
          doctest::Approx(std::exp(6.0) / 3.0).epsilon(1e-15));
}

TEST_CASE("conditional evaluator assembles polynomial and singularity parts") {
    // n = 2: order n-1 = 1.  Catalog with a single real alpha = 1 and no
    // critical entries; zero polynomials: value = x^2 / (1*2).
    const pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    pgt::ConditionalPsiConfig config;
    config.truncation_height = 100.0;
    config.epsilon1 = 0.1;
    config.delta = 0.1;
    const double x = 20.0;
    const fm::ConditionalPsiResult res = fm::explicit_psi_nminus1(catalog, config, x);
    CHECK(res.value == doctest::Approx(x * x / 2.0).epsilon(1e-14));
    CHECK(res.reported_bound ==
          doctest::Approx(std::pow(x, 2.1) / (0.1 * std::pow(100.0, 0.9))).epsilon(1e-12));

    // Polynomial coefficients: index m multiplies x^(n-1-m).
    pgt::ConditionalPsiConfig poly = config;
    poly.poly_log_coeffs = {2.0};       // 2 x log x
    poly.poly_coeffs = {0.5, -1.0};     // 0.5 x - 1
    const fm::ConditionalPsiResult res2 = fm::explicit_psi_nminus1(catalog, poly, x);
    CHECK(res2.value == doctest::Approx(x * x / 2.0 + 2.0 * x * std::log(x) + 0.5 * x - 1.0)
                            .epsilon(1e-14));
}

TEST_CASE("conditional evaluator enforces its preconditions") {
    const pgt::SingularityCatalog catalog = single_real_catalog(1.0);
    pgt::ConditionalPsiConfig config;
    config.truncation_height = 100.0;
    config.epsilon1 = 0.1;
    config.delta = 0.1;

    pgt::ConditionalPsiConfig bad = config;
    bad.truncation_height = 0.0;
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(catalog, bad, 10.0), pgt::ValidationError);
    bad = config;
    bad.epsilon1 = 0.0;
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(catalog, bad, 10.0), pgt::ValidationError);
    bad = config;
    bad.delta = 1.0;
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(catalog, bad, 10.0), pgt::ValidationError);
    bad = config;
    bad.poly_coeffs = {1.0, 2.0, 3.0}; // more coefficients than x^(n-1), ..., x^0
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(catalog, bad, 10.0), pgt::ValidationError);

    // A real singularity at an excluded integer 0, -1, ..., -(n-1) hits a
    // vanishing denominator and must be rejected up front.
    pgt::SingularityCatalog zero = catalog;
    zero.channels[0].real_singularities.push_back({{0.0, 0.0}, 1});
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(zero, config, 10.0), pgt::ValidationError);
    pgt::SingularityCatalog neg = catalog;
    neg.channels[0].real_singularities.push_back({{-1.0, 0.0}, 1});
    CHECK_THROWS_AS(fm::explicit_psi_nminus1(neg, config, 10.0), pgt::ValidationError);
}

TEST_CASE("conditional evaluator matches extended-precision re-summation") {
    const pgt::ManifoldParams params(2, Rational(1, 2));
    pgt::SingularityCatalog catalog = fm::weyl_sample(params, 0.5, 40.0);
    catalog.channels[0].real_singularities.push_back({{1.0, 0.0}, 1});
    catalog.channels[0].real_singularities.push_back({{0.75, 0.0}, 2});
    pgt::ConditionalPsiConfig config;
    config.poly_log_coeffs = {1.0};
    config.poly_coeffs = {0.0, 2.0};
    config.truncation_height = 25.0;
    config.epsilon1 = 0.1;
    config.delta = 0.1;
    const double x = std::exp(7.0);
    const fm::ConditionalPsiResult res = fm::explicit_psi_nminus1(catalog, config, x);
    const std::complex<long double> slow = oracles::ld_conditional_psi(catalog, config, x);
    CHECK(std::fabs(res.value - static_cast<double>(slow.real())) <=
          1e-10 * std::fabs(static_cast<double>(slow.real())));
    // Conjugate closure: the imaginary residue is tiny relative to the value.
    CHECK(std::fabs(static_cast<double>(slow.imag())) <=
          1e-8 * std::fabs(static_cast<double>(slow.real())));
}

TEST_SUITE_END();
