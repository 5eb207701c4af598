#pragma once

#include <stdexcept>
#include <string>

namespace opord {

// Base class for every failure this library can diagnose.  Callers that only
// want "did it work" can catch this one type.
struct OpordError : std::runtime_error {
    explicit OpordError(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix dimensions disagree where they must match.
struct DimensionMismatch : OpordError {
    explicit DimensionMismatch(const std::string& msg) : OpordError(msg) {}
};

// A matrix presented as symmetric has off-symmetric entries beyond tolerance.
struct AsymmetryViolation : OpordError {
    explicit AsymmetryViolation(const std::string& msg) : OpordError(msg) {}
};

// Eigenvalue iteration failed to reach the off-diagonal target.
struct EigenConvergenceFailure : OpordError {
    explicit EigenConvergenceFailure(const std::string& msg) : OpordError(msg) {}
};

// A matrix required to be strictly positive definite is not (smallest
// eigenvalue at or below the relative floor).
struct StrictPositivityViolation : OpordError {
    explicit StrictPositivityViolation(const std::string& msg) : OpordError(msg) {}
};

// Parameters fall outside the domain of the requested formula.
struct InvalidParams : OpordError {
    explicit InvalidParams(const std::string& msg) : OpordError(msg) {}
};

// An exponent denominator degenerates (r equal to the final t), so the
// requested expression is not defined.
struct DegenerateExponent : OpordError {
    explicit DegenerateExponent(const std::string& msg) : OpordError(msg) {}
};

// An operation that requires an ordered chain was handed an unordered one.
struct PreorderViolation : OpordError {
    explicit PreorderViolation(const std::string& msg) : OpordError(msg) {}
};

// An operation that requires a verified inequality found it violated.
struct InequalityViolated : OpordError {
    explicit InequalityViolated(const std::string& msg) : OpordError(msg) {}
};

// Range inclusion could not be certified because the factor is too close to
// singular for the majorization test to mean anything.
struct MajorizationUnverifiable : OpordError {
    explicit MajorizationUnverifiable(const std::string& msg) : OpordError(msg) {}
};

// A file could not be read, written, or parsed.  The message carries the
// path so batch runs can report which input failed.
struct IoError : OpordError {
    explicit IoError(const std::string& msg) : OpordError(msg) {}
};

}  // namespace opord
