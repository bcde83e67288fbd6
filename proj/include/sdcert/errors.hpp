#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdcert {

// Every failure raised by the library derives from Error so callers (the
// certifier in particular) can downgrade component failures uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class PoleAtSpecialization : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ShapeViolation : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class RankAmbiguous : public Error {
 public:
  using Error::Error;
};

class DegenerateContext : public Error {
 public:
  using Error::Error;
};

class StructureViolation : public Error {
 public:
  using Error::Error;
};

class NotAnIsometry : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Raised when the Burnside word search stops short of the full matrix algebra.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::size_t achieved_rank, bool saturated)
      : Error(what), achieved_rank_(achieved_rank), saturated_(saturated) {}

  std::size_t achieved_rank() const noexcept { return achieved_rank_; }
  /// True when a whole word length added nothing: the span is then closed
  /// under multiplication and the rank is final, not a budget artefact.
  bool saturated() const noexcept { return saturated_; }

 private:
  std::size_t achieved_rank_;
  bool saturated_;
};

}  // namespace sdcert
