// errors.hpp: exception types shared by every hompost module

#pragma once

#include <stdexcept>
#include <string>

namespace hompost {

// Argument outside the mathematical domain of an operation (negative time, t2 < t1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation not defined for the requested bath family (e.g. J(ω) of a Markovian bath).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// The defining integral diverges (power-law exponent n < 1).
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical integration did not reach its tolerance.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved_error)
        : std::runtime_error(what + " (achieved error bound " + std::to_string(achieved_error) + ")")
        , achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

// Post-selection retained no records; distinct from a visibility of zero.
class EmptyEnsembleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or unwritable file, or a malformed record line.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hompost
