#ifndef BURRWEIBULL_ERRORS_HPP
#define BURRWEIBULL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bw {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument value: non-positive parameter, x outside the support,
// probability outside its admissible interval, divergent transform domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Valid input whose result is not representable, e.g. a hazard ratio whose
// denominator underflowed to zero.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

// An iterative solver exhausted its budget without meeting its tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature failed to reach the requested accuracy, or the
// integral provably diverges.
class IntegrationError : public Error {
public:
    explicit IntegrationError(const std::string& msg) : Error(msg) {}
};

// A series expansion was requested outside its applicability region.
class ValidityError : public Error {
public:
    explicit ValidityError(const std::string& msg) : Error(msg) {}
};

// Malformed input text; message carries line (and column where known).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A study produced too many failed replicates to report honestly.
class ReportError : public Error {
public:
    explicit ReportError(const std::string& msg) : Error(msg) {}
};

} // namespace bw

#endif
