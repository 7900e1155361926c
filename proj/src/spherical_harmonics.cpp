#include "metriq/spherical_harmonics.hpp"

#include <cmath>
#include <numbers>

#include "metriq/error.hpp"

namespace metriq {

// Each Y_jm is the restriction of a homogeneous solid harmonic
//   S_jm = N * Pi_j^m(z, r^2) * (A_m or B_m),
// A_m + i B_m = (x + i y)^m, so the ambient gradient comes from the same
// recurrences and the tangent part is grad S - j S x on the unit sphere.
HarmonicSet real_spherical_harmonics(int j, const Eigen::Vector3d& p) {
  if (j < 0) throw Error(ErrorKind::OutOfRange, "degree j must be >= 0");
  const Eigen::Vector3d x = p.normalized();
  const double X = x.x(), Y = x.y(), Z = x.z(), s = 1.0;  // s = r^2 on the sphere
  HarmonicSet out;
  out.values.resize(2 * j + 1);
  out.gradients.resize(2 * j + 1, 3);

  // A_m, B_m and derivatives for m = 0..j
  std::vector<double> A(j + 1), B(j + 1);
  A[0] = 1.0;
  B[0] = 0.0;
  for (int m = 1; m <= j; ++m) {
    A[m] = X * A[m - 1] - Y * B[m - 1];
    B[m] = X * B[m - 1] + Y * A[m - 1];
  }

  for (int m = 0; m <= j; ++m) {
    // Pi_l^m for l = m..j with derivatives in z and s
    double dfact = 1.0;
    for (int i = 2 * m - 1; i > 1; i -= 2) dfact *= i;
    double p2 = 0.0, pz2 = 0.0, ps2 = 0.0;  // l - 2
    double p1 = dfact, pz1 = 0.0, ps1 = 0.0;  // l - 1, starts at l = m
    for (int l = m + 1; l <= j; ++l) {
      double p0, pz0, ps0;
      if (l == m + 1) {
        p0 = (2 * m + 1) * Z * p1;
        pz0 = (2 * m + 1) * p1;
        ps0 = 0.0;
      } else {
        const double a = 2.0 * l - 1.0, b = l + m - 1.0, c = l - m;
        p0 = (a * Z * p1 - b * s * p2) / c;
        pz0 = (a * (p1 + Z * pz1) - b * s * pz2) / c;
        ps0 = (a * Z * ps1 - b * (p2 + s * ps2)) / c;
      }
      p2 = p1;
      pz2 = pz1;
      ps2 = ps1;
      p1 = p0;
      pz1 = pz0;
      ps1 = ps0;
    }
    const double Pi = p1, Piz = pz1, Pis = ps1;

    double ratio = 1.0;  // (j-m)! / (j+m)!
    for (int i = j - m + 1; i <= j + m; ++i) ratio /= i;
    double N = std::sqrt((2.0 * j + 1.0) / (4.0 * std::numbers::pi) * ratio);
    if (m > 0) N *= std::numbers::sqrt2;

    for (int sgn : {+1, -1}) {
      if (m == 0 && sgn < 0) continue;
      const bool cosine = sgn > 0;
      const double T = cosine ? A[m] : B[m];
      double Tx = 0.0, Ty = 0.0;
      if (m > 0) {
        Tx = cosine ? m * A[m - 1] : m * B[m - 1];
        Ty = cosine ? -m * B[m - 1] : m * A[m - 1];
      }
      const double S = N * Pi * T;
      Eigen::Vector3d grad(N * (Pis * 2.0 * X * T + Pi * Tx), N * (Pis * 2.0 * Y * T + Pi * Ty),
                           N * (Piz + Pis * 2.0 * Z) * T);
      grad -= j * S * x;
      const int row = j + sgn * m;
      out.values[row] = S;
      out.gradients.row(row) = grad.transpose();
    }
  }
  return out;
}

double real_spherical_harmonic(int j, int m, const Eigen::Vector3d& x) {
  if (m < -j || m > j) throw Error(ErrorKind::OutOfRange, "|m| must not exceed j");
  return real_spherical_harmonics(j, x).values[j + m];
}

}  // namespace metriq
