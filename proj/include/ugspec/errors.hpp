#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ugspec {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidLabeling : public Error {
  public:
    using Error::Error;
};

class InvalidInstance : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Violated caller-side precondition (bad parameters, wrong mode for the input).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Non-finite input or an iteration that failed to converge.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Some enumeration (net, brute force, materialization) would exceed its budget.
class BudgetError : public Error {
  public:
    using Error::Error;
};

class DegenerateSpectrum : public NumericError {
  public:
    using NumericError::NumericError;
};

/// dim(W) exceeded SolveParams::max_dim.
class DimensionAbort : public BudgetError {
  public:
    DimensionAbort(std::size_t dim, std::size_t max_dim, const std::string &what)
        : BudgetError(what), dim_(dim), max_dim_(max_dim) {}
    std::size_t dim() const noexcept { return dim_; }
    std::size_t max_dim() const noexcept { return max_dim_; }

  private:
    std::size_t dim_;
    std::size_t max_dim_;
};

} // namespace ugspec
