#pragma once

#include <stdexcept>
#include <string>

namespace sattrack {

// All library errors derive from Error so callers can catch one base type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A pivot fell below the singularity floor during elimination.
struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

// An iterative routine exhausted its budget before meeting tolerance.
struct NoConvergence : Error {
    double last_residual;
    NoConvergence(const std::string& what, double residual)
        : Error(what), last_residual(residual) {}
};

// Physically meaningless input (r <= 0, negative step, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

struct InvalidVariance : Error {
    explicit InvalidVariance(const std::string& what) : Error(what) {}
};

struct NotPSD : Error {
    explicit NotPSD(const std::string& what) : Error(what) {}
};

// Innovation variance too small to divide by.
struct DegenerateInnovation : Error {
    explicit DegenerateInnovation(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct EmptyTrace : Error {
    explicit EmptyTrace(const std::string& what) : Error(what) {}
};

struct EmptySequence : Error {
    explicit EmptySequence(const std::string& what) : Error(what) {}
};

// A series whose sample variance is numerically zero.
struct DegenerateSeries : Error {
    explicit DegenerateSeries(const std::string& what) : Error(what) {}
};

// A configuration value violates an invariant.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Malformed configuration input (bad JSON, unknown key, wrong type).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace sattrack
