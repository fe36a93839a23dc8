#ifndef EXSUM_ERRORS_HPP
#define EXSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace exsum {

/// Bad instance data (duplicate poles, p | d_j, non-prime p, ...).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Requested enumeration exceeds the configured cap.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// p-adic working precision exhausted (caller should retry higher).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal exactness assertion failed; indicates a bug, not bad input.
struct integrity_error : std::logic_error {
    explicit integrity_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace exsum

#endif
