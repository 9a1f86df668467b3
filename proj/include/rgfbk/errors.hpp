#pragma once

#include <stdexcept>
#include <string>

namespace rgfbk {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or argument values (bad alpha/beta/gamma, size mismatch).
class ParameterError : public Error {
public:
  using Error::Error;
};

// An evaluator produced a non-finite component; the message names the first
// offending index.
class EvaluationError : public Error {
public:
  using Error::Error;
};

// The evaluation point lies outside the problem's domain (e.g. a vanishing
// denominator in the Chandrasekhar discretization).
class DomainError : public Error {
public:
  using Error::Error;
};

// A step direction or row had (numerically) zero norm.
class DegenerateError : public Error {
public:
  using Error::Error;
};

// The solver exhausted its block-resampling attempts within one iteration.
class StagnationError : public Error {
public:
  using Error::Error;
};

// Signal raised by selection rules when the residual vector is identically
// zero: the iterate already solves the system. Distinct from ParameterError.
class AlreadyConverged : public Error {
public:
  using Error::Error;
};

// A dense factorization failed (non-finite entries).
class NumericError : public Error {
public:
  using Error::Error;
};

// Rate-bound inputs violate the hypotheses under which the bound holds.
class HypothesisError : public Error {
public:
  using Error::Error;
};

// Too few usable entries to fit an empirical rate.
class InsufficientDataError : public Error {
public:
  using Error::Error;
};

// No reference solution could be computed; error tracking stays disabled.
class NoReferenceError : public Error {
public:
  using Error::Error;
};

}  // namespace rgfbk
