#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scalefit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, invariant breaches, arguments out of domain.
/// The CLI maps these to exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

/// The numerics could not produce an answer for otherwise valid input.
/// The CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Measurements do not form a full Cartesian product of m and n levels.
class NotAGrid : public InputError {
public:
    using InputError::InputError;
};

class InsufficientData : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFiniteObjective : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class EmptyTarget : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A closed form needs a strictly positive exponent.
class DegenerateExponent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Requested error level lies outside the envelope's open range.
class OutOfRange : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The constant-error contour has no finite solution for the given size.
class Infeasible : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace scalefit
