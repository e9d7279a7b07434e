#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

// Base class for every error raised by the library. The `kind()` tag is what
// the command-line tool serialises into its machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Argument outside the mathematical domain of an operation (r >= 1, z = 0 for a tent, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

// A weight or integrand whose tail does not converge.
class IntegrabilityError : public Error {
public:
    explicit IntegrabilityError(const std::string& message) : Error("integrability", message) {}
};

// Requested grid / lattice would exceed the configured node budget.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& message) : Error("resource", message) {}
};

// An analytic self-map produced a value outside the disc.
class SelfMapError : public Error {
public:
    explicit SelfMapError(const std::string& message) : Error("self_map", message) {}
};

// Normalising quantity underflowed (e.g. omega(S(a)) == 0 for a test function).
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& message) : Error("degenerate", message) {}
};

// Non-finite value met while integrating.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& message) : Error("numeric", message) {}
};

// Malformed configuration or serialised object.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

}  // namespace bergman
