#pragma once

#include <stdexcept>
#include <string>

namespace gldrel {

/// Thrown when an iterative scheme fails to converge or a quantity leaves
/// the range where it can be evaluated reliably (e.g. survival underflow).
/// Distinct from std::domain_error, which signals invalid inputs.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gldrel
