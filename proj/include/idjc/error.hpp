// error.hpp: exception types shared by every idjc module.
//
// Domain errors (bad dimensions, invalid cat parameters, mismatched inputs)
// derive from DomainError. Numerical precondition failures (a Fock truncation
// too small for the state it must hold) derive from NumericError. The CLI maps
// the two families onto distinct exit codes.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idjc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidDim : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidCat : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidState : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidParams : public DomainError {
public:
    using DomainError::DomainError;
};

class WeightMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class DimMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// Fock truncation cannot hold the requested state to the tail tolerance.
class TruncationTooSmall : public NumericError {
public:
    using NumericError::NumericError;
};

// Population near the truncation edge would be pushed out of the space.
class TailLeak : public NumericError {
public:
    using NumericError::NumericError;
};

class SelfCheckFailed : public NumericError {
public:
    using NumericError::NumericError;
};

class IoError : public Error {
public:
    using Error::Error;
};

struct FieldError {
    std::string field;
    std::string message;
};

class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<FieldError> errors)
        : Error(render(errors)), errors_(std::move(errors)) {}

    ConfigError(std::string field, std::string message)
        : ConfigError(std::vector<FieldError>{{std::move(field), std::move(message)}}) {}

    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    static std::string render(const std::vector<FieldError>& errors) {
        std::string out = "invalid configuration";
        for (const auto& e : errors) {
            out += "\n  ";
            out += e.field;
            out += ": ";
            out += e.message;
        }
        return out;
    }

    std::vector<FieldError> errors_;
};

}  // namespace idjc
