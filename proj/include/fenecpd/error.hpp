#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fenecpd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data: configuration, parameters, mesh arguments, fields.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its target (linear solve, Picard
/// iteration, eigen-solve). Carries the residual history when one exists.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what, std::vector<double> residuals = {})
      : Error(what), residuals_(std::move(residuals)) {}

  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace fenecpd
