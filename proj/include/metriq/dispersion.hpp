#pragma once

#include <vector>

#include "metriq/builders.hpp"
#include "metriq/graph.hpp"

namespace metriq {

/// Plane wave on a periodic lattice of spacing ell. kx, ky should be
/// 2 pi p / P for the torus period P.
struct DispersionQuery {
  Connectivity connectivity = Connectivity::Cardinal;
  double ell = 0.1;
  double kx = 0.0;
  double ky = 0.0;
};

/// Smallest k >= 0 on the first branch of
///   cardinal: cos(k l) = (cos(kx l) + cos(ky l)) / 2
///   ordinal:  cos(sqrt2 k l) = cos(kx l) cos(ky l)
///   both:     [cos(k l) - (cos a + cos b)/2] / sin(k l)
///             + [cos(sqrt2 k l) - cos a cos b] / sin(sqrt2 k l) = 0.
/// Throws NoSolutionInBranch when the first branch has no root.
double dispersion_k(const DispersionQuery& q);

struct LimitRow {
  double ell;
  double k;
  double defect;  // |2 k^2 - (kx^2 + ky^2)|
  double ratio;   // previous defect / this defect (0 for the first row)
};

std::vector<LimitRow> verify_limit(Connectivity c, double kx, double ky, const std::vector<double>& ells);

/// Max |(L(k) f)_v| for the plane wave f(v) = cos(kx x_v + ky y_v + phase)
/// at the dispersion k of a periodic lattice; L uses the free boundary.
double cross_check_secular(const MetricGraph& torus, const DispersionQuery& q, double phase = 0.3);

}  // namespace metriq
