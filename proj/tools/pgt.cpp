// pgt: command-line workbench for prime geodesic counting experiments.
//
// Exit codes: 0 success, 2 validation failure, 3 incomplete-data rejection.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgt/chebyshev.hpp"
#include "pgt/errors.hpp"
#include "pgt/experiment.hpp"
#include "pgt/explicit_formulas.hpp"
#include "pgt/gallagher.hpp"
#include "pgt/io.hpp"
#include "pgt/spectrum.hpp"
#include "pgt/validate.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        pgt::io::write_text_file(out_path, text);
}

std::string provenance_json(const pgt::experiment::Manifest& manifest) {
    nlohmann::json js = nlohmann::json::object();
    for (const auto& [k, v] : manifest.entries()) js[k] = v;
    js["digest"] = manifest.digest();
    return js.dump();
}

std::vector<std::string> manifest_comments(const pgt::experiment::Manifest& manifest) {
    std::vector<std::string> out;
    out.push_back("manifest digest=" + manifest.digest());
    for (const auto& [k, v] : manifest.entries()) out.push_back("manifest " + k + "=" + v);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double_field(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw pgt::ValidationError("bad numeric field '" + text + "'");
    return v;
}

std::vector<std::pair<double, double>> read_series(const std::string& path, const std::string& x_col,
                                                   const std::string& y_col) {
    std::istringstream is(pgt::io::read_text_file(path));
    std::string line;
    std::vector<std::string> header;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv(line);
        break;
    }
    if (header.empty()) throw pgt::ValidationError("fit: no header row in " + path);
    std::ptrdiff_t xi = -1, yi = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == x_col) xi = static_cast<std::ptrdiff_t>(i);
        if (header[i] == y_col) yi = static_cast<std::ptrdiff_t>(i);
    }
    if (xi < 0) throw pgt::ValidationError("fit: column '" + x_col + "' not found in " + path);
    if (yi < 0) throw pgt::ValidationError("fit: column '" + y_col + "' not found in " + path);
    std::vector<std::pair<double, double>> series;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw pgt::ValidationError("fit: ragged CSV row '" + line + "'");
        series.emplace_back(parse_double_field(fields[static_cast<std::size_t>(xi)]),
                            parse_double_field(fields[static_cast<std::size_t>(yi)]));
    }
    return series;
}

std::string rational_line(const char* name, const pgt::Rational& r) {
    return std::string(name) + " = " + r.str() + " (" + pgt::io::format_g17(r.to_double()) + ")\n";
}

double catalog_max_height(const pgt::SingularityCatalog& catalog) {
    double h = 0.0;
    for (const pgt::Channel& channel : catalog.channels)
        for (const pgt::Singularity& s : channel.critical_singularities)
            h = std::max(h, std::fabs(s.alpha.imag()));
    return h;
}

// ----- subcommand option blocks -----

struct EnumerateOpts {
    double norm_bound = 0.0;
    std::int64_t entry_bound = 0;
    bool oracle = false;
    int threads = 1;
    std::string out;
};

struct PsiOpts {
    std::string spectrum;
    double x = 0.0;
    bool have_x = false;
    std::string grid;
    int j = 1;
    std::string out;
};

struct ExplicitOpts {
    std::string catalog;
    double x = 0.0;
    bool have_x = false;
    std::string grid;
    int j = 0;
    bool conditional = false;
    std::string config;
    double w_height = std::numeric_limits<double>::infinity();
    int threads = 1;
    std::string out;
};

struct PlanOpts {
    int n = 2;
    std::string rho;
    int j = 1;
    double epsilon = 0.01;
    std::string out;
};

struct GallagherOpts {
    std::string source;
    std::string spectrum;
    std::string catalog;
    int n = 2;
    std::string rho;
    int j = 0;
    double epsilon = 0.01;
    int i_min = 0;
    int i_max = 0;
    int grid_density = 512;
    double w_height = 0.0;
    int threads = 1;
    std::string out;
};

struct SynthOpts {
    int n = 2;
    std::string rho;
    double c1 = 0.0;
    double height = 0.0;
    int p = 1;
    std::string tau = "std";
    double lambda = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> alphas;
    std::string out;
};

struct CompareOpts {
    std::string spectrum;
    std::string catalog;
    std::string mode;
    int j = 0;
    double epsilon = 0.01;
    std::string grid;
    std::string out;
};

struct FitOpts {
    std::string in;
    std::string x_col = "x";
    std::string y_col = "remainder";
    std::string out;
};

pgt::ManifoldParams params_from_flags(int n, const std::string& rho_text) {
    if (rho_text.empty()) return pgt::ManifoldParams::real_hyperbolic(n);
    return pgt::ManifoldParams(n, pgt::Rational::parse(rho_text));
}

// ----- subcommand drivers -----

int run_enumerate(const EnumerateOpts& opt) {
    std::int64_t entry_bound = opt.entry_bound;
    if (opt.oracle && entry_bound <= 0)
        entry_bound = 2 * static_cast<std::int64_t>(std::sqrt(std::max(opt.norm_bound, 9.0))) + 8;
    const pgt::LengthSpectrum spectrum =
        opt.oracle ? pgt::spectrum::brute_force_spectrum(opt.norm_bound, entry_bound)
                   : pgt::spectrum::enumerate_spectrum(opt.norm_bound, opt.threads);

    pgt::experiment::Manifest manifest;
    manifest.set("command", std::string("enumerate"));
    manifest.set("version", std::string(kVersion));
    manifest.set("norm_bound", opt.norm_bound);
    manifest.set("method", std::string(opt.oracle ? "conjugacy-search" : "form-classes"));
    if (opt.oracle) manifest.set("entry_bound", entry_bound);
    emit(opt.out, pgt::io::spectrum_to_csv(spectrum, manifest_comments(manifest)));
    return 0;
}

int run_psi(const PsiOpts& opt) {
    const std::string text = pgt::io::read_text_file(opt.spectrum);
    const pgt::LengthSpectrum spectrum = pgt::io::spectrum_from_csv(text);
    if (opt.j < 1) throw pgt::ValidationError("psi: --j must be >= 1");
    if (opt.have_x == !opt.grid.empty())
        throw pgt::ValidationError("psi: give exactly one of --x or --grid");

    std::vector<double> xs;
    pgt::experiment::Manifest manifest;
    manifest.set("command", std::string("psi"));
    manifest.set("version", std::string(kVersion));
    manifest.set("spectrum_digest", pgt::experiment::content_digest(text));
    manifest.set("j", opt.j);
    if (opt.have_x) {
        xs.push_back(opt.x);
        manifest.set("x", opt.x);
    } else {
        const auto spec = pgt::experiment::GridSpec::parse(opt.grid);
        xs = spec.points();
        manifest.set("grid", spec.str());
    }

    std::ostringstream os;
    for (const std::string& c : manifest_comments(manifest)) os << "# " << c << "\n";
    os << "x,psi0,psi_j,pi_gamma\n";
    for (double x : xs)
        os << pgt::io::format_g17(x) << ',' << pgt::io::format_g17(pgt::chebyshev::psi0(spectrum, x))
           << ',' << pgt::io::format_g17(pgt::chebyshev::psi_j(spectrum, x, opt.j)) << ','
           << pgt::chebyshev::pi_gamma(spectrum, x) << "\n";
    emit(opt.out, os.str());
    return 0;
}

int run_explicit(const ExplicitOpts& opt) {
    const std::string text = pgt::io::read_text_file(opt.catalog);
    const pgt::SingularityCatalog catalog = pgt::io::catalog_from_json(text);
    if (opt.have_x == !opt.grid.empty())
        throw pgt::ValidationError("explicit: give exactly one of --x or --grid");

    std::vector<double> xs;
    pgt::experiment::Manifest manifest;
    manifest.set("command", std::string("explicit"));
    manifest.set("version", std::string(kVersion));
    manifest.set("catalog_digest", pgt::experiment::content_digest(text));
    if (opt.have_x) {
        xs.push_back(opt.x);
        manifest.set("x", opt.x);
    } else {
        const auto spec = pgt::experiment::GridSpec::parse(opt.grid);
        xs = spec.points();
        manifest.set("grid", spec.str());
    }

    std::ostringstream os;
    if (opt.conditional) {
        pgt::ConditionalPsiConfig config;
        if (!opt.config.empty()) {
            config = pgt::io::read_config(opt.config);
            manifest.set("config_digest",
                         pgt::experiment::content_digest(pgt::io::read_text_file(opt.config)));
        } else {
            config.epsilon1 = 0.1;
            config.delta = 0.1;
        }
        if (std::isfinite(opt.w_height)) config.truncation_height = opt.w_height;
        manifest.set("mode", std::string("conditional"));
        manifest.set("truncation_height", config.truncation_height);
        for (const std::string& c : manifest_comments(manifest)) os << "# " << c << "\n";
        os << "x,value,reported_bound\n";
        for (double x : xs) {
            const auto result = pgt::formulas::explicit_psi_nminus1(catalog, config, x);
            os << pgt::io::format_g17(x) << ',' << pgt::io::format_g17(result.value) << ','
               << pgt::io::format_g17(result.reported_bound) << "\n";
        }
    } else {
        if (opt.j <= 0) throw pgt::ValidationError("explicit: --j is required (j >= n)");
        manifest.set("mode", std::string("order-j"));
        manifest.set("j", opt.j);
        if (std::isfinite(opt.w_height)) manifest.set("y_max", opt.w_height);
        for (const std::string& c : manifest_comments(manifest)) os << "# " << c << "\n";
        os << "x,value,reported_bound\n";
        for (double x : xs) {
            const double value = pgt::formulas::explicit_psi_j(catalog, x, opt.j, opt.w_height, opt.threads);
            os << pgt::io::format_g17(x) << ',' << pgt::io::format_g17(value) << ",0\n";
        }
    }
    emit(opt.out, os.str());
    return 0;
}

int run_plan(const PlanOpts& opt) {
    const pgt::ManifoldParams params = params_from_flags(opt.n, opt.rho);
    const pgt::SmoothingPlan plan = pgt::gallagher::solve_plan(params, opt.j, opt.epsilon);
    std::ostringstream os;
    os << "plan for n=" << params.n << ", rho=" << params.rho.str() << ", j=" << plan.j
       << ", epsilon=" << pgt::io::format_g17(plan.epsilon) << "\n";
    os << "conditional = " << (plan.conditional ? "yes" : "no") << "\n";
    os << rational_line("gamma", plan.gamma_exp);
    os << rational_line("beta", plan.beta);
    os << rational_line("d_x", plan.d_exponents.x_exp);
    os << rational_line("d_log", plan.d_exponents.log_exp);
    os << rational_line("d_loglog", plan.d_exponents.loglog_exp);
    os << rational_line("y_x", plan.y_exponents.x_exp);
    os << rational_line("y_log", plan.y_exponents.log_exp);
    os << rational_line("y_loglog", plan.y_exponents.loglog_exp);
    os << rational_line("psi0_error_x", pgt::gallagher::psi0_error_x_exponent(params, opt.j));
    os << rational_line("psi0_error_log", pgt::gallagher::psi0_error_log_exponent(params, opt.j));
    emit(opt.out, os.str());
    return 0;
}

int run_gallagher(const GallagherOpts& opt) {
    if (opt.source != "spectrum" && opt.source != "catalog")
        throw pgt::ValidationError("gallagher-run: --source must be 'spectrum' or 'catalog'");
    if (opt.j < 1) throw pgt::ValidationError("gallagher-run: --j must be >= 1");

    pgt::experiment::Manifest manifest;
    manifest.set("command", std::string("gallagher-run"));
    manifest.set("version", std::string(kVersion));
    manifest.set("source", opt.source);
    manifest.set("j", opt.j);
    manifest.set("epsilon", opt.epsilon);
    manifest.set("i_min", opt.i_min);
    manifest.set("i_max", opt.i_max);
    manifest.set("grid_density", opt.grid_density);

    pgt::ExceptionalReport report;
    if (opt.source == "spectrum") {
        if (opt.spectrum.empty()) throw pgt::ValidationError("gallagher-run: --spectrum required");
        const std::string text = pgt::io::read_text_file(opt.spectrum);
        const pgt::LengthSpectrum spectrum = pgt::io::spectrum_from_csv(text);
        const pgt::ManifoldParams params = params_from_flags(opt.n, opt.rho);
        const pgt::SmoothingPlan plan = pgt::gallagher::solve_plan(params, opt.j, opt.epsilon);
        manifest.set("spectrum_digest", pgt::experiment::content_digest(text));
        manifest.set("n", params.n);
        manifest.set("rho", params.rho.str());
        auto remainder = [&](double x) {
            return pgt::chebyshev::psi0(spectrum, x) - pgt::formulas::main_term(params, x);
        };
        report = pgt::gallagher::exceptional_report(remainder, plan, params, opt.i_min, opt.i_max,
                                                    opt.grid_density, pgt::gallagher::RemainderLevel::Psi0,
                                                    opt.threads);
        manifest.set("level", std::string("psi0"));
    } else {
        if (opt.catalog.empty()) throw pgt::ValidationError("gallagher-run: --catalog required");
        const std::string text = pgt::io::read_text_file(opt.catalog);
        const pgt::SingularityCatalog catalog = pgt::io::catalog_from_json(text);
        const pgt::ManifoldParams params = catalog.params;
        const pgt::SmoothingPlan plan = pgt::gallagher::solve_plan(params, opt.j, opt.epsilon);
        const double w_height = (opt.w_height > 0.0) ? opt.w_height : catalog_max_height(catalog);
        manifest.set("catalog_digest", pgt::experiment::content_digest(text));
        manifest.set("n", params.n);
        manifest.set("rho", params.rho.str());
        manifest.set("w_height", w_height);
        const pgt::ExponentTriple& ye = plan.y_exponents;
        // Critical-line tail between the plan's split height Y(x) and W.  This is
        // the quantity the threshold x^gamma (log x)^beta (log log x)^{beta+eps}
        // is designed for; the head |Im alpha| <= Y(x) is absorbed into the
        // deterministic error term and must not be measured against it.
        auto remainder = [&, w_height](double x) {
            const double lx = std::log(x);
            const double y_of_x = std::exp(ye.x_exp.to_double() * lx +
                                           ye.log_exp.to_double() * std::log(lx) +
                                           ye.loglog_exp.to_double() * std::log(std::log(lx)));
            if (y_of_x >= w_height) return 0.0;
            return pgt::formulas::explicit_psi_j(catalog, x, opt.j, w_height) -
                   pgt::formulas::explicit_psi_j(catalog, x, opt.j, y_of_x);
        };
        report = pgt::gallagher::exceptional_report(remainder, plan, params, opt.i_min, opt.i_max,
                                                    opt.grid_density, pgt::gallagher::RemainderLevel::PsiJ,
                                                    opt.threads);
        manifest.set("level", std::string("psi_j"));
    }
    emit(opt.out, pgt::io::report_to_json(report, opt.epsilon, provenance_json(manifest)) + "\n");
    return 0;
}

int run_synth(const SynthOpts& opt) {
    const pgt::ManifoldParams params = params_from_flags(opt.n, opt.rho);
    pgt::formulas::WeylChannelSpec spec;
    spec.p = opt.p;
    spec.tau = opt.tau;
    spec.lambda = opt.lambda;
    for (double alpha : opt.alphas) spec.real_singularities.push_back({{alpha, 0.0}, 1});
    const pgt::SingularityCatalog catalog = pgt::formulas::weyl_sample(params, opt.c1, opt.height, spec);
    const auto violations = pgt::validate_catalog(catalog);
    if (!violations.empty())
        throw pgt::ValidationError("synth: generated catalog failed validation: " +
                                   violations.front().invariant + " (" + violations.front().detail + ")");
    emit(opt.out, pgt::io::catalog_to_json(catalog) + "\n");
    return 0;
}

int run_compare(const CompareOpts& opt) {
    if (opt.mode != "gallagher" && opt.mode != "unconditional")
        throw pgt::ValidationError("pgt-compare: --mode must be 'gallagher' or 'unconditional'");
    if (opt.j < 1) throw pgt::ValidationError("pgt-compare: --j must be >= 1");
    const std::string spectrum_text = pgt::io::read_text_file(opt.spectrum);
    const std::string catalog_text = pgt::io::read_text_file(opt.catalog);
    const pgt::LengthSpectrum spectrum = pgt::io::spectrum_from_csv(spectrum_text);
    const pgt::SingularityCatalog catalog = pgt::io::catalog_from_json(catalog_text);
    const auto grid_spec = pgt::experiment::GridSpec::parse(opt.grid);
    const auto mode = (opt.mode == "gallagher") ? pgt::experiment::CompareMode::Gallagher
                                                : pgt::experiment::CompareMode::Unconditional;
    const auto rows = pgt::experiment::pgt_compare(spectrum, catalog, catalog.params, mode, opt.j,
                                                   opt.epsilon, grid_spec.points());

    pgt::experiment::Manifest manifest;
    manifest.set("command", std::string("pgt-compare"));
    manifest.set("version", std::string(kVersion));
    manifest.set("spectrum_digest", pgt::experiment::content_digest(spectrum_text));
    manifest.set("catalog_digest", pgt::experiment::content_digest(catalog_text));
    manifest.set("mode", opt.mode);
    manifest.set("j", opt.j);
    manifest.set("epsilon", opt.epsilon);
    manifest.set("grid", grid_spec.str());
    emit(opt.out, pgt::experiment::compare_rows_to_csv(rows, manifest_comments(manifest)));
    return 0;
}

int run_fit(const FitOpts& opt) {
    const auto series = read_series(opt.in, opt.x_col, opt.y_col);
    const auto fit = pgt::experiment::fit_exponent(series);
    std::ostringstream os;
    os << "slope = " << pgt::io::format_g17(fit.slope) << "\n";
    os << "stderr = " << pgt::io::format_g17(fit.slope_stderr) << "\n";
    emit(opt.out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime geodesic counting workbench"};
    app.set_version_flag("--version", std::string("pgt ") + kVersion);
    app.require_subcommand(1);

    EnumerateOpts enum_opt;
    auto* cmd_enum = app.add_subcommand("enumerate", "Enumerate a length spectrum up to a norm bound");
    cmd_enum->add_option("--norm-bound", enum_opt.norm_bound, "Completeness bound (> 1)")->required();
    cmd_enum->add_flag("--oracle", enum_opt.oracle,
                       "Use the brute-force conjugacy search instead of form-class counting");
    cmd_enum->add_option("--entry-bound", enum_opt.entry_bound,
                         "Matrix entry bound for --oracle (default: auto)");
    cmd_enum->add_option("--threads", enum_opt.threads, "Worker threads");
    cmd_enum->add_option("--out", enum_opt.out, "Output CSV path (default: stdout)");

    PsiOpts psi_opt;
    auto* cmd_psi = app.add_subcommand("psi", "Evaluate counting functions over a spectrum");
    cmd_psi->add_option("--spectrum", psi_opt.spectrum, "Spectrum CSV")->required();
    cmd_psi->add_option("--x", psi_opt.x, "Single evaluation point");
    cmd_psi->add_option("--grid", psi_opt.grid, "Geometric grid 'x0:ratio:count'");
    cmd_psi->add_option("--j", psi_opt.j, "Integration order for the psi_j column (default 1)");
    cmd_psi->add_option("--out", psi_opt.out, "Output CSV path (default: stdout)");

    ExplicitOpts expl_opt;
    auto* cmd_expl = app.add_subcommand("explicit", "Evaluate the singularity-side formulas");
    cmd_expl->add_option("--catalog", expl_opt.catalog, "Catalog JSON")->required();
    cmd_expl->add_option("--x", expl_opt.x, "Single evaluation point");
    cmd_expl->add_option("--grid", expl_opt.grid, "Geometric grid 'x0:ratio:count'");
    cmd_expl->add_option("--j", expl_opt.j, "Order (j >= n)");
    cmd_expl->add_flag("--conditional", expl_opt.conditional,
                       "Evaluate the order-(n-1) conditional formula instead");
    cmd_expl->add_option("--config", expl_opt.config, "Conditional-evaluator config JSON");
    cmd_expl->add_option("--w-height", expl_opt.w_height,
                         "Critical-line truncation height (y_max, or T for --conditional)");
    cmd_expl->add_option("--threads", expl_opt.threads, "Worker threads");
    cmd_expl->add_option("--out", expl_opt.out, "Output CSV path (default: stdout)");

    PlanOpts plan_opt;
    auto* cmd_plan = app.add_subcommand("plan", "Solve the smoothing-exponent system");
    cmd_plan->add_option("--n", plan_opt.n, "Dimension parameter n >= 2")->required();
    cmd_plan->add_option("--rho", plan_opt.rho, "rho as 'p/q' (default (n-1)/2)");
    cmd_plan->add_option("--j", plan_opt.j, "Smoothing order (j >= n-1)")->required();
    cmd_plan->add_option("--epsilon", plan_opt.epsilon, "Threshold epsilon (default 0.01)");
    cmd_plan->add_option("--out", plan_opt.out, "Output path (default: stdout)");

    GallagherOpts gal_opt;
    auto* cmd_gal = app.add_subcommand("gallagher-run", "Exceptional-set measure experiment");
    cmd_gal->add_option("--source", gal_opt.source, "'spectrum' or 'catalog'")->required();
    cmd_gal->add_option("--spectrum", gal_opt.spectrum, "Spectrum CSV (source=spectrum)");
    cmd_gal->add_option("--catalog", gal_opt.catalog, "Catalog JSON (source=catalog)");
    cmd_gal->add_option("--n", gal_opt.n, "Dimension parameter (source=spectrum, default 2)");
    cmd_gal->add_option("--rho", gal_opt.rho, "rho as 'p/q' (source=spectrum, default (n-1)/2)");
    cmd_gal->add_option("--j", gal_opt.j, "Smoothing order")->required();
    cmd_gal->add_option("--epsilon", gal_opt.epsilon, "Threshold epsilon (default 0.01)");
    cmd_gal->add_option("--i-min", gal_opt.i_min, "First unit log-interval")->required();
    cmd_gal->add_option("--i-max", gal_opt.i_max, "Last unit log-interval")->required();
    cmd_gal->add_option("--grid", gal_opt.grid_density, "Grid points per interval (default 512)");
    cmd_gal->add_option("--w-height", gal_opt.w_height,
                        "Truncation-height cap (source=catalog; default: catalog height)");
    cmd_gal->add_option("--threads", gal_opt.threads, "Worker threads");
    cmd_gal->add_option("--out", gal_opt.out, "Output JSON path (default: stdout)");

    SynthOpts synth_opt;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic Weyl-law catalog");
    cmd_synth->add_option("--n", synth_opt.n, "Dimension parameter n >= 2 (default 2)");
    cmd_synth->add_option("--rho", synth_opt.rho, "rho as 'p/q' (default (n-1)/2)");
    cmd_synth->add_option("--c1", synth_opt.c1, "Weyl constant C1 > 0")->required();
    cmd_synth->add_option("--height", synth_opt.height, "Critical-line height")->required();
    cmd_synth->add_option("--p", synth_opt.p, "Channel degree p (default 1)");
    cmd_synth->add_option("--tau", synth_opt.tau, "Channel label (default 'std')");
    cmd_synth->add_option("--lambda", synth_opt.lambda, "Channel lambda (default 2*rho)");
    cmd_synth->add_option("--alpha", synth_opt.alphas, "Real singularity (repeatable, order 1)");
    cmd_synth->add_option("--out", synth_opt.out, "Output JSON path (default: stdout)");

    CompareOpts cmp_opt;
    auto* cmd_cmp = app.add_subcommand("pgt-compare", "Prime counts vs. predicted main terms");
    cmd_cmp->add_option("--spectrum", cmp_opt.spectrum, "Spectrum CSV")->required();
    cmd_cmp->add_option("--catalog", cmp_opt.catalog, "Catalog JSON")->required();
    cmd_cmp->add_option("--mode", cmp_opt.mode, "'gallagher' or 'unconditional'")->required();
    cmd_cmp->add_option("--j", cmp_opt.j, "Smoothing order")->required();
    cmd_cmp->add_option("--epsilon", cmp_opt.epsilon, "Bound epsilon (default 0.01)");
    cmd_cmp->add_option("--grid", cmp_opt.grid, "Geometric grid 'x0:ratio:count'")->required();
    cmd_cmp->add_option("--out", cmp_opt.out, "Output CSV path (default: stdout)");

    FitOpts fit_opt;
    auto* cmd_fit = app.add_subcommand("fit", "Least-squares exponent of a remainder series");
    cmd_fit->add_option("--in", fit_opt.in, "Input CSV")->required();
    cmd_fit->add_option("--x-col", fit_opt.x_col, "Abscissa column (default 'x')");
    cmd_fit->add_option("--y-col", fit_opt.y_col, "Remainder column (default 'remainder')");
    cmd_fit->add_option("--out", fit_opt.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    psi_opt.have_x = cmd_psi->count("--x") > 0;
    expl_opt.have_x = cmd_expl->count("--x") > 0;

    try {
        if (cmd_enum->parsed()) return run_enumerate(enum_opt);
        if (cmd_psi->parsed()) return run_psi(psi_opt);
        if (cmd_expl->parsed()) return run_explicit(expl_opt);
        if (cmd_plan->parsed()) return run_plan(plan_opt);
        if (cmd_gal->parsed()) return run_gallagher(gal_opt);
        if (cmd_synth->parsed()) return run_synth(synth_opt);
        if (cmd_cmp->parsed()) return run_compare(cmp_opt);
        if (cmd_fit->parsed()) return run_fit(fit_opt);
    } catch (const pgt::IncompleteDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pgt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
