#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metriq {

/// Machine-readable error categories. The CLI prints the category name
/// so scripts can branch on it.
enum class ErrorKind {
  InvalidGraph,
  PoleOnEdge,
  OutOfRange,
  InvalidSpec,
  DegenerateRings,
  PoleAt,
  NotEquilateral,
  SingularAt,
  NoRootsFound,
  UnboundedCell,
  NoSolutionInBranch,
  BesselZeroNotFound,
  ConvergenceFailure,
  SingularB,
  AmbiguousMatch,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when k sits within the pole tolerance of n*pi/l_e for some edge.
class PoleError : public Error {
 public:
  PoleError(ErrorKind kind, double k, std::vector<std::size_t> edges);

  double k() const noexcept { return k_; }
  const std::vector<std::size_t>& edges() const noexcept { return edges_; }

 private:
  double k_;
  std::vector<std::size_t> edges_;
};

/// Raised by the Newton step when L(k) cannot be factored; the solver reads
/// this as "landed on a root".
class SingularError : public Error {
 public:
  explicit SingularError(double k);
  double k() const noexcept { return k_; }

 private:
  double k_;
};

}  // namespace metriq
