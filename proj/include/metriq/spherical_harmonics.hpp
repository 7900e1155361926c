#pragma once

#include <Eigen/Dense>
#include <vector>

namespace metriq {

/// Real orthonormal spherical harmonics without the Condon-Shortley phase:
///   m > 0: sqrt(2) N_jm P_j^m(cos theta) cos(m phi)
///   m = 0: N_j0 P_j(cos theta)
///   m < 0: sqrt(2) N_j|m| P_j^|m|(cos theta) sin(|m| phi)
/// Entries are ordered m = -j..j.
struct HarmonicSet {
  Eigen::VectorXd values;
  Eigen::Matrix<double, Eigen::Dynamic, 3> gradients;  // tangent gradients on the unit sphere
};

/// Evaluates every Y_jm at the direction of x (need not be unit length).
HarmonicSet real_spherical_harmonics(int j, const Eigen::Vector3d& x);

double real_spherical_harmonic(int j, int m, const Eigen::Vector3d& x);

}  // namespace metriq
