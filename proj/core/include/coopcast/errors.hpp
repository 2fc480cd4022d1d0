#pragma once

#include <stdexcept>
#include <string>

namespace coopcast {

// File or stream failure while reading/writing artifacts (CLI exit code 2).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed; indicates a bug, not bad input
// (CLI exit code 3).
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// The analytical machinery does not apply at the requested parameters,
// e.g. a density below the regime threshold. Treated as invalid input.
struct inapplicable_error : std::invalid_argument {
    explicit inapplicable_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace coopcast
