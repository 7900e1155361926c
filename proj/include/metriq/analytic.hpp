#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace metriq {

enum class Family { Square, Rect, Spider, Sphere, Path };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Continuum eigenpair with unit norm in L2 of the domain.
/// Indices: (m, n) on the square and rectangle; (m, n) for the spider with
/// `sine` selecting sin(m theta); (j, m) on the sphere; (n, 0) on a path.
struct AnalyticMode {
  Family family = Family::Square;
  int i0 = 0;
  int i1 = 0;
  bool sine = false;
  double k = 0.0;
  std::function<double(const Eigen::Vector3d&)> eval;

  std::string label() const;
};

/// k = (pi / sqrt 2) sqrt(m^2 + n^2), f = 2 sin(m pi x) sin(n pi y).
AnalyticMode square_mode(int m, int n);

/// k = pi sqrt((m^2 + 2 n^2) / 3) for the operator f_xx / 3 + 2 f_yy / 3.
AnalyticMode rect_mode(int m, int n);

/// Spider web with rho = r / gamma on the clamped unit disc.
/// m = 0: k = (2n + 1) pi / (2 sqrt(1 + gamma)), n >= 0, f ~ cos(sqrt(1+gamma) k r).
/// m >= 1: k = zeta_{n,nu} / sqrt(1 + gamma), n >= 1, f ~ sqrt(r) J_nu(sqrt(1+gamma) k r),
/// nu = sqrt(4 gamma m^2 + 1) / 2.
AnalyticMode spider_mode(double gamma, int m, int n, bool sine = false);

/// Order of the radial Bessel function for angular mode m.
double spider_nu(double gamma, int m);

/// Radial profile of a spider mode (no angular factor, not normalized).
double spider_radial(double gamma, int m, double k, double r);

/// k = sqrt(j (j + 1) / 2), f = Y_jm.
AnalyticMode sphere_mode(int j, int m);

/// Clamped interval [0, length]: k = n pi / length, f = sqrt(2/length) sin(k x).
AnalyticMode path_mode(int n, double length = 1.0);

/// Every mode of a family with k <= kmax, sorted by k. `param` is gamma
/// for the spider and the length for a path.
std::vector<AnalyticMode> analytic_modes(Family family, double kmax, double param = 1.0);

}  // namespace metriq
