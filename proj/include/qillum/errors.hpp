#pragma once

#include <stdexcept>
#include <string>

namespace qillum {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A scalar argument violates its documented domain (n_s <= 0, m < 1, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Matrix or vector shapes do not fit together.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A covariance matrix is not positive definite.
class NonPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A symplectic eigenvalue falls below the vacuum limit 1/4.
class UncertaintyViolation : public Error {
public:
    using Error::Error;
};

/// An intermediate expression left its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The overlap parameter s lies outside [0, 1].
class SOutOfRange : public Error {
public:
    using Error::Error;
};

/// The overlap kernel matrix is numerically singular.
class SingularOverlap : public Error {
public:
    using Error::Error;
};

/// A truncated-basis state lost more probability mass than allowed.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// The requested computation is out of reach at an honest precision.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace qillum
