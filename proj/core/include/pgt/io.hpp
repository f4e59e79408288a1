#ifndef PGT_IO_HPP
#define PGT_IO_HPP

#include <string>
#include <vector>

#include "pgt/types.hpp"

namespace pgt::io {

// 17-significant-digit rendering used for every float this project writes;
// guarantees bit-exact read-back of doubles.
std::string format_g17(double v);

// Spectrum files are CSV with header "norm,length,weight,primitive,multiplicity".
// A leading comment line "# norm_bound=<value>" preserves the enumeration
// bound; extra comment lines (e.g. a run manifest) may precede the header and
// are ignored on read.  Floats are printed with 17 significant digits so a
// write/read cycle reproduces them bit-exactly.
std::string spectrum_to_csv(const LengthSpectrum& spectrum,
                            const std::vector<std::string>& comments = {});
LengthSpectrum spectrum_from_csv(const std::string& text);

// Catalog files are JSON:
// {"n": int, "rho": "p/q", "weyl_constant": float,
//  "channels": [{"p": int, "tau": string, "lambda": float,
//                "real_singularities": [{"alpha": float, "order": int}],
//                "critical_singularities": [{"im": float, "order": int}]}]}
// Critical entries carry only the imaginary part; Re = rho is implied and
// restored on load.  Channel signs are derived from p.  Missing "order"
// fields default to 1.
std::string catalog_to_json(const SingularityCatalog& catalog);
SingularityCatalog catalog_from_json(const std::string& text);

// Evaluator configuration for the conditional order-(n-1) formula:
// {"poly_log_coeffs": [...], "poly_coeffs": [...], "truncation_height": T,
//  "epsilon1": e1, "delta": d}
std::string config_to_json(const ConditionalPsiConfig& config);
ConditionalPsiConfig config_from_json(const std::string& text);

// Exceedance report serialization; provenance_json must be a JSON object (it
// is embedded verbatim under the "provenance" key) or empty.
std::string report_to_json(const ExceptionalReport& report, double epsilon,
                           const std::string& provenance_json = "");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

LengthSpectrum read_spectrum(const std::string& path);
void write_spectrum(const std::string& path, const LengthSpectrum& spectrum,
                    const std::vector<std::string>& comments = {});
SingularityCatalog read_catalog(const std::string& path);
void write_catalog(const std::string& path, const SingularityCatalog& catalog);
ConditionalPsiConfig read_config(const std::string& path);

} // namespace pgt::io

#endif
