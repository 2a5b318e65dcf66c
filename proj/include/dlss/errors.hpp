#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlss {

/// Coarse error categories, mirrored 1:1 by the C API status codes and the
/// CLI exit codes.
enum class ErrorCode {
    config = 2,       ///< bad configuration / precondition on user input
    instability = 3,  ///< time stepping produced NaN/Inf or blow-up
    io = 4,           ///< file read/write failure
    internal = 5,     ///< broken internal invariant
    domain = 6,       ///< pointwise map evaluated outside its domain
    range = 7,        ///< argument outside supported range
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

/// A pointwise map hit a value outside its domain (e.g. sqrt of a negative).
/// Carries the offending sample index and value.
class DomainError : public Error {
public:
    DomainError(const std::string& what, std::size_t index, double value)
        : Error(ErrorCode::domain, what + " at index " + std::to_string(index) + " (value " +
                                       std::to_string(value) + ")"),
          index_(index),
          value_(value) {}
    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// Solver blow-up. `time()` is the simulation time at which it was detected.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, double time)
        : Error(ErrorCode::instability, what + " at t=" + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Positivity floor violation (value below -floor_tol).
class PositivityError : public InstabilityError {
public:
    PositivityError(const std::string& what, double time) : InstabilityError(what, time) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorCode::range, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

/// Nonlinear solve failed to converge; carries the final residual norm.
class SolveError : public Error {
public:
    SolveError(const std::string& what, double residual)
        : Error(ErrorCode::internal, what + " (final residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace dlss
