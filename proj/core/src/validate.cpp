#include "pgt/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace pgt {

namespace {

std::string channel_name(const Channel& ch, std::size_t idx) {
    std::ostringstream os;
    os << "channel[" << idx << "] tau=" << (ch.tau.empty() ? "?" : ch.tau) << " p=" << ch.p;
    return os.str();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::vector<Violation> validate_catalog(const SingularityCatalog& catalog,
                                        const CatalogCheckOptions& options) {
    std::vector<Violation> out;
    const double rho = catalog.params.rho_d();
    const double two_rho = 2.0 * rho;

    if (catalog.channels.empty())
        out.push_back({"catalog", "channel count", "catalog must contain at least one channel"});
    if (!(catalog.weyl_constant > 0.0))
        out.push_back({"catalog", "weyl constant", "weyl_constant must be positive"});

    for (std::size_t ci = 0; ci < catalog.channels.size(); ++ci) {
        const Channel& ch = catalog.channels[ci];
        const std::string name = channel_name(ch, ci);

        if (ch.p < 0 || ch.p > catalog.params.n - 1)
            out.push_back({name, "p range", "p must lie in [0, n-1], got " + std::to_string(ch.p)});
        if (ch.sign != expected_channel_sign(ch.p))
            out.push_back({name, "sign identity",
                           "sign must equal (-1)^(p+1) = " + std::to_string(expected_channel_sign(ch.p))});

        for (const Singularity& s : ch.real_singularities) {
            if (s.order == 0)
                out.push_back({name, "order nonzero", "real singularity at " + fmt(s.alpha.real()) + " has order 0"});
            if (s.alpha.imag() != 0.0)
                out.push_back({name, "real axis",
                               "real singularity has Im = " + fmt(s.alpha.imag())});
            if (s.alpha.real() > two_rho + 1e-12 * std::max(1.0, std::fabs(two_rho)))
                out.push_back({name, "real range",
                               "real singularity at " + fmt(s.alpha.real()) + " exceeds 2*rho = " + fmt(two_rho)});
        }

        // Conjugate closure: pair each off-axis entry with its mirror image,
        // matching order.  Positions are compared bitwise; catalogs are
        // produced by samplers/loaders that set both members identically.
        std::map<std::pair<double, int>, long> closure;
        for (const Singularity& s : ch.critical_singularities) {
            if (s.order == 0)
                out.push_back({name, "order nonzero",
                               "critical singularity at height " + fmt(s.alpha.imag()) + " has order 0"});
            if (s.alpha.real() != rho)
                out.push_back({name, "critical line",
                               "critical singularity has Re = " + fmt(s.alpha.real()) + ", expected rho = " + fmt(rho)});
            if (s.alpha.imag() != 0.0)
                closure[{s.alpha.imag(), s.order}] += 1;
        }
        for (const auto& [key, count] : closure) {
            auto mirror = closure.find({-key.first, key.second});
            long mirrored = (mirror == closure.end()) ? 0 : mirror->second;
            if (mirrored < count && key.first > 0.0)
                out.push_back({name, "conjugate closure",
                               "height " + fmt(key.first) + " (order " + std::to_string(key.second) +
                                   ") lacks a matching conjugate"});
            if (mirrored > count && key.first > 0.0)
                out.push_back({name, "conjugate closure",
                               "height " + fmt(-key.first) + " (order " + std::to_string(key.second) +
                                   ") lacks a matching conjugate"});
        }

        // Weyl-law consistency: the ordered positive heights g_1 <= g_2 <= ...
        // must satisfy N(g_k) = k ~ C1*g_k^n within the configured envelope.
        std::vector<double> heights;
        for (const Singularity& s : ch.critical_singularities)
            if (s.alpha.imag() > 0.0) heights.push_back(s.alpha.imag());
        std::sort(heights.begin(), heights.end());
        const double c1 = catalog.weyl_constant;
        for (std::size_t k = 0; k < heights.size(); ++k) {
            const double y = heights[k];
            const double expected = c1 * std::pow(y, catalog.params.n);
            const double slack = options.envelope_abs + options.envelope_rel * std::pow(y, catalog.params.n - 1);
            const double actual = static_cast<double>(k + 1);
            if (std::fabs(actual - expected) > slack) {
                out.push_back({name, "weyl envelope",
                               "counting function at height " + fmt(y) + " is " + fmt(actual) +
                                   ", expected " + fmt(expected) + " within " + fmt(slack)});
                break; // one report per channel is enough
            }
        }
    }
    return out;
}

} // namespace pgt
