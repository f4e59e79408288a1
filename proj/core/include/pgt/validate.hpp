#ifndef PGT_VALIDATE_HPP
#define PGT_VALIDATE_HPP

#include <vector>

#include "pgt/types.hpp"

namespace pgt {

// Slack for the Weyl-law consistency check: a channel's critical counting
// function N(y) must satisfy |N(y) - C1*y^n| <= envelope_abs +
// envelope_rel * y^(n-1) at every stored height.  Defaults accommodate the
// rounding inherent in exact Weyl data (deviation < 1).
struct CatalogCheckOptions {
    double envelope_abs = 2.0;
    double envelope_rel = 1.0;
};

// Structural validation of a catalog.  Returns one entry per violated
// invariant; an empty result means the catalog satisfies every Channel and
// SingularityCatalog invariant.  Never throws: violations are data.
std::vector<Violation> validate_catalog(const SingularityCatalog& catalog,
                                        const CatalogCheckOptions& options = {});

} // namespace pgt

#endif
