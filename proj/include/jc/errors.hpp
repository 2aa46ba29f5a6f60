#pragma once

#include <stdexcept>
#include <string>

namespace jc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A supplied probability table is negative, non-finite, or has zero mass.
class InvalidDistribution : public Error {
public:
    using Error::Error;
};

/// A distribution family cannot be represented at the requested parameters.
class DegenerateState : public Error {
public:
    using Error::Error;
};

/// A log-space recurrence cancelled below the significance floor.
class NumericalInstability : public Error {
public:
    NumericalInstability(const std::string& what, int index)
        : Error(what), index_at_failure(index) {}
    int index_at_failure;
};

/// Combined amplitudes do not form a unit-norm state.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Probability at the top doublet of a truncated state exceeds tolerance.
class TruncationLeak : public Error {
public:
    using Error::Error;
};

/// Requested time lies outside the disentanglement window around t0.
class WindowViolation : public Error {
public:
    using Error::Error;
};

/// The two field branches of an entangled state peak at incompatible indices.
class PeakMismatch : public Error {
public:
    using Error::Error;
};

/// Continuation model parameters are out of range.
class InvalidModel : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureNoConvergence : public Error {
public:
    QuadratureNoConvergence(const std::string& what, double achieved)
        : Error(what), achieved_error(achieved) {}
    double achieved_error;
};

/// The design recursion terminated before producing any support beyond n = 0.
class EmptyDesign : public Error {
public:
    using Error::Error;
};

/// Design weights cannot be normalized in finite arithmetic.
class UnnormalizableDesign : public Error {
public:
    using Error::Error;
};

/// Bad CLI flags, config file, or parameter preconditions.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace jc
