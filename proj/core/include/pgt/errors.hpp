#ifndef PGT_ERRORS_HPP
#define PGT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgt {

// Inputs that violate a structural precondition (bad parameters, malformed
// files, out-of-domain arguments).  The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A query that a data set cannot answer (e.g. evaluating a counting function
// beyond the enumeration bound of a spectrum).  The CLI maps this to exit
// code 3: the input is well-formed, it just does not reach far enough.
class IncompleteDataError : public std::runtime_error {
public:
    explicit IncompleteDataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pgt

#endif
