#pragma once

#include <stdexcept>
#include <string>

namespace metadice {

/// Rejection of a candidate basic tuple or contraction configuration
/// (value collision, broken cycle, inadmissible lambda, ...). Distinct from
/// std::invalid_argument so callers can map it to a validation exit code.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metadice
