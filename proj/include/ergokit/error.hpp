// error.hpp: exception types shared by all ergokit modules

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ergokit {

// Base class; every ergokit failure derives from it.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Invalid battery or state data (ordering, trace, positivity).
class ValidationError : public Error {
public:
    using Error::Error;
};

class TargetOutOfRange : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

class NotDiagonal : public Error {
public:
    using Error::Error;
};

// Malformed input file; the message names the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

// Enumeration exceeded a configured cap. `required` is the size that was
// asked for; `largest_feasible_n` is filled in by curve-style callers.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, double required, int largest_feasible_n = 0)
        : Error(what), required_(required), largest_feasible_n_(largest_feasible_n) {}

    double required() const noexcept { return required_; }
    int largest_feasible_n() const noexcept { return largest_feasible_n_; }

private:
    double required_;
    int largest_feasible_n_;
};

} // namespace ergokit
