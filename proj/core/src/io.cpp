#include "pgt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pgt::io {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string g17(double v) { return format_g17(v); }

std::vector<std::string> split_csv_line(const std::string& line) {
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

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("bad ") + what + " value: '" + s + "'");
    }
}

} // namespace

std::string spectrum_to_csv(const LengthSpectrum& spectrum, const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const std::string& c : comments) os << "# " << c << "\n";
    os << "# norm_bound=" << g17(spectrum.norm_bound()) << "\n";
    os << "norm,length,weight,primitive,multiplicity\n";
    for (const GeodesicRecord& r : spectrum.records()) {
        os << g17(r.norm) << ',' << g17(r.length) << ',' << g17(r.weight) << ','
           << (r.primitive ? 1 : 0) << ',' << r.multiplicity << "\n";
    }
    return os.str();
}

LengthSpectrum spectrum_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<GeodesicRecord> records;
    double norm_bound = 0.0;
    bool have_bound = false;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') {
            auto pos = line.find("norm_bound=");
            if (pos != std::string::npos)
                norm_bound = parse_double(line.substr(pos + 11), "norm_bound"), have_bound = true;
            continue;
        }
        if (!have_header) {
            if (split_csv_line(line) !=
                std::vector<std::string>{"norm", "length", "weight", "primitive", "multiplicity"})
                throw ValidationError("spectrum CSV: unexpected header '" + line + "'");
            have_header = true;
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 5) throw ValidationError("spectrum CSV: expected 5 fields, got '" + line + "'");
        records.emplace_back(parse_double(f[0], "norm"), parse_double(f[1], "length"),
                             parse_double(f[2], "weight"), f[3] == "1" || f[3] == "true",
                             static_cast<int>(parse_double(f[4], "multiplicity")));
    }
    if (!have_header) throw ValidationError("spectrum CSV: missing header");
    if (!have_bound) {
        norm_bound = 1.0;
        for (const GeodesicRecord& r : records) norm_bound = std::max(norm_bound, r.norm);
        norm_bound = std::max(norm_bound, 1.0 + 1e-9);
    }
    return LengthSpectrum(std::move(records), norm_bound);
}

std::string catalog_to_json(const SingularityCatalog& catalog) {
    json j;
    j["n"] = catalog.params.n;
    j["rho"] = catalog.params.rho.str();
    j["weyl_constant"] = catalog.weyl_constant;
    j["channels"] = json::array();
    for (const Channel& ch : catalog.channels) {
        json jc;
        jc["p"] = ch.p;
        jc["tau"] = ch.tau;
        jc["lambda"] = ch.lambda;
        jc["real_singularities"] = json::array();
        for (const Singularity& s : ch.real_singularities)
            jc["real_singularities"].push_back({{"alpha", s.alpha.real()}, {"order", s.order}});
        jc["critical_singularities"] = json::array();
        for (const Singularity& s : ch.critical_singularities)
            jc["critical_singularities"].push_back({{"im", s.alpha.imag()}, {"order", s.order}});
        j["channels"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

SingularityCatalog catalog_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("catalog JSON: ") + e.what());
    }
    try {
        SingularityCatalog catalog;
        catalog.params = ManifoldParams(j.at("n").get<int>(), Rational::parse(j.at("rho").get<std::string>()));
        catalog.weyl_constant = j.at("weyl_constant").get<double>();
        const double rho = catalog.params.rho_d();
        for (const json& jc : j.at("channels")) {
            Channel ch;
            ch.p = jc.at("p").get<int>();
            ch.tau = jc.value("tau", std::string());
            ch.lambda = jc.at("lambda").get<double>();
            ch.sign = expected_channel_sign(ch.p);
            if (jc.contains("real_singularities"))
                for (const json& js : jc.at("real_singularities"))
                    ch.real_singularities.push_back(
                        {{js.at("alpha").get<double>(), 0.0}, js.value("order", 1)});
            if (jc.contains("critical_singularities"))
                for (const json& js : jc.at("critical_singularities"))
                    ch.critical_singularities.push_back(
                        {{rho, js.at("im").get<double>()}, js.value("order", 1)});
            catalog.channels.push_back(std::move(ch));
        }
        return catalog;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("catalog JSON: ") + e.what());
    }
}

std::string config_to_json(const ConditionalPsiConfig& config) {
    json j;
    j["poly_log_coeffs"] = config.poly_log_coeffs;
    j["poly_coeffs"] = config.poly_coeffs;
    j["truncation_height"] = config.truncation_height;
    j["epsilon1"] = config.epsilon1;
    j["delta"] = config.delta;
    return j.dump(2) + "\n";
}

ConditionalPsiConfig config_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        ConditionalPsiConfig c;
        c.poly_log_coeffs = j.at("poly_log_coeffs").get<std::vector<double>>();
        c.poly_coeffs = j.at("poly_coeffs").get<std::vector<double>>();
        c.truncation_height = j.at("truncation_height").get<double>();
        c.epsilon1 = j.at("epsilon1").get<double>();
        c.delta = j.at("delta").get<double>();
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config JSON: ") + e.what());
    }
}

std::string report_to_json(const ExceptionalReport& report, double epsilon,
                           const std::string& provenance_json) {
    json j;
    if (!provenance_json.empty()) {
        try {
            j["provenance"] = json::parse(provenance_json);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("provenance JSON: ") + e.what());
        }
    }
    j["epsilon"] = epsilon;
    j["intervals"] = json::array();
    for (const IntervalMeasure& m : report.intervals)
        j["intervals"].push_back({{"i", m.i}, {"exceed_measure", m.exceed_measure}});
    j["total_measure"] = report.total_measure;
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << text;
    if (!out) throw ValidationError("write failed: " + path);
}

LengthSpectrum read_spectrum(const std::string& path) { return spectrum_from_csv(read_text_file(path)); }

void write_spectrum(const std::string& path, const LengthSpectrum& spectrum,
                    const std::vector<std::string>& comments) {
    write_text_file(path, spectrum_to_csv(spectrum, comments));
}

SingularityCatalog read_catalog(const std::string& path) { return catalog_from_json(read_text_file(path)); }

void write_catalog(const std::string& path, const SingularityCatalog& catalog) {
    write_text_file(path, catalog_to_json(catalog));
}

ConditionalPsiConfig read_config(const std::string& path) { return config_from_json(read_text_file(path)); }

} // namespace pgt::io
