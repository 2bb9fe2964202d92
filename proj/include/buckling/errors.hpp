#pragma once

#include <stdexcept>
#include <string>

namespace buckling {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the supported domain (negative x, kappa out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Unscaled evaluation would overflow double range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Ratio evaluated (numerically) at a zero of its denominator.
class PoleError : public Error {
public:
    using Error::Error;
};

// Endpoint signs of the certified bracket do not differ. Signals a kernel
// accuracy fault; never recovered from by widening the bracket.
class BracketError : public Error {
public:
    using Error::Error;
};

class NoSignChangeError : public Error {
public:
    using Error::Error;
};

// Enumeration grid too small to certify the requested part of the spectrum.
class InsufficientGridError : public Error {
public:
    using Error::Error;
};

// Interior root count of a profile differs from ell - 1.
class NodalMismatchError : public Error {
public:
    NodalMismatchError(const std::string& what, int expected, int found)
        : Error(what), expected_(expected), found_(found) {}
    int expected() const noexcept { return expected_; }
    int found() const noexcept { return found_; }

private:
    int expected_;
    int found_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace buckling
