#include "metriq/error.hpp"

#include <sstream>

namespace metriq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::PoleOnEdge: return "PoleOnEdge";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::DegenerateRings: return "DegenerateRings";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::NotEquilateral: return "NotEquilateral";
    case ErrorKind::SingularAt: return "SingularAt";
    case ErrorKind::NoRootsFound: return "NoRootsFound";
    case ErrorKind::UnboundedCell: return "UnboundedCell";
    case ErrorKind::NoSolutionInBranch: return "NoSolutionInBranch";
    case ErrorKind::BesselZeroNotFound: return "BesselZeroNotFound";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularB: return "SingularB";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string pole_message(double k, const std::vector<std::size_t>& edges) {
  std::ostringstream os;
  os.precision(17);
  os << "k = " << k << " is a pole of edge(s)";
  std::size_t shown = 0;
  for (auto e : edges) {
    if (shown++ == 8) {
      os << " ...";
      break;
    }
    os << ' ' << e;
  }
  return os.str();
}

}  // namespace

PoleError::PoleError(ErrorKind kind, double k, std::vector<std::size_t> edges)
    : Error(kind, pole_message(k, edges)), k_(k), edges_(std::move(edges)) {}

SingularError::SingularError(double k)
    : Error(ErrorKind::SingularAt, "L(k) is singular at k = " + std::to_string(k)), k_(k) {}

}  // namespace metriq
