#pragma once

#include <stdexcept>
#include <string>

namespace garding {

/// Invalid argument or precondition violation (bad dimensions, indices out
/// of range, malformed input). Maps to CLI exit code 2.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation failed numerically (iteration did not converge, a matrix
/// that should be Hermitian is not, an evaluator returned a non-real value).
/// Carries the offending residual when known. Maps to CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// The requested signature is outside the supported classification range
/// (m > n, or m = M). The message names the operation that covers the case.
class unsupported_signature : public domain_error {
public:
    explicit unsupported_signature(const std::string& what) : domain_error(what) {}
};

} // namespace garding
