#pragma once

#include <stdexcept>
#include <string>

namespace qmcoh {

/// Base of every error the library reports. `exit_code()` is what the CLI
/// returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 1; }
};

/// Malformed input: bad labels, unparsable files, mismatched groups.
class InputError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed the configured size budget.
class BudgetError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

/// The coboundary of an associator is not constant on the fibres of the
/// grading, so the skeleton is not quasi-monoidal for that grading.
class DescentError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

/// No cover in the supplied catalog trivializes the requested class.
class ExhaustionError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

/// Violated internal invariant. Signals a bug, never a valid outcome.
class InternalError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

} // namespace qmcoh
