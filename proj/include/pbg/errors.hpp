// errors.hpp: Exception types raised by the pbg library

#pragma once

#include <stdexcept>
#include <string>

namespace pbg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical parameters or run configuration.
struct ConfigError : Error {
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Numerical failures. The CLI maps all of these to exit code 2.
struct NumericalError : Error {
    using Error::Error;
};

struct SingularSteadyState : NumericalError {
    using NumericalError::NumericalError;
};

struct SingularResponse : NumericalError {
    using NumericalError::NumericalError;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct StepSizeTooLarge : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace pbg
