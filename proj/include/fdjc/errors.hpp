#pragma once

#include <stdexcept>
#include <string>

namespace fdjc {

/// Base class for all numerical failures raised by the library.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gamma function evaluated too close to a non-positive integer.
struct PoleError : NumericalError {
    using NumericalError::NumericalError;
};

/// A series or iteration exhausted its term budget without meeting tolerance.
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

/// Closed-form branch requested where it degenerates (k·g = 0).
struct DegenerateBranch : NumericalError {
    using NumericalError::NumericalError;
};

/// The two fundamental solutions became linearly dependent at matching time.
struct SingularWronskian : NumericalError {
    using NumericalError::NumericalError;
};

/// Field expectation ill-defined (mean photon number below threshold).
struct DegenerateField : NumericalError {
    using NumericalError::NumericalError;
};

/// Configuration / CLI input problems. `kind` distinguishes parse vs key errors.
struct ConfigError : std::runtime_error {
    enum class Kind { Parse, UnknownKey, MissingKey, UnknownPreset };
    Kind kind;
    ConfigError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

} // namespace fdjc
