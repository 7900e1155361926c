#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "metriq/graph.hpp"

namespace metriq::testing {

/// Dense L(k) built straight from the edge list, without the library's
/// assembly.
inline Eigen::MatrixXd dense_secular(const MetricGraph& g, double k, Boundary bc) {
  const long n = static_cast<long>(g.num_vertices());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const double s = std::sin(k * e.length), c = std::cos(k * e.length);
    L(e.tail, e.tail) += c / s;
    L(e.head, e.head) += c / s;
    L(e.tail, e.head) -= 1.0 / s;
    L(e.head, e.tail) -= 1.0 / s;
  }
  if (bc == Boundary::Free) return L;
  std::vector<long> keep;
  for (long v = 0; v < n; ++v)
    if (!g.vertex(v).boundary) keep.push_back(v);
  Eigen::MatrixXd R(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) R(i, j) = L(keep[i], keep[j]);
  return R;
}

inline long dense_negative_count(const MetricGraph& g, double k, Boundary bc) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_secular(g, k, bc), Eigen::EigenvaluesOnly);
  return (es.eigenvalues().array() < 0.0).count();
}

/// Roots in [kmin, kmax] repeated by multiplicity, found by scanning the
/// eigenvalues of the dense L(k) on a fine grid inside every pole-free
/// interval and bisecting each sign change. The eigenvalues of L decrease
/// monotonically between poles, so the negative count only grows there.
inline std::vector<double> scan_roots(const MetricGraph& g, Boundary bc, double kmin, double kmax,
                                      double grid = 1e-3) {
  std::vector<double> poles{kmin, kmax};
  for (const auto& e : g.edges()) {
    if (bc == Boundary::Clamped && g.vertex(e.tail).boundary && g.vertex(e.head).boundary) continue;
    for (int n = 1; n * M_PI / e.length < kmax; ++n)
      if (n * M_PI / e.length > kmin) poles.push_back(n * M_PI / e.length);
  }
  std::sort(poles.begin(), poles.end());
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < poles.size(); ++i) {
    const double a = poles[i] + 1e-9, b = poles[i + 1] - 1e-9;
    if (b <= a) continue;
    const int steps = std::max(2, static_cast<int>((b - a) / grid));
    double lo = a;
    long nlo = dense_negative_count(g, lo, bc);
    for (int s = 1; s <= steps; ++s) {
      const double hi = a + (b - a) * s / steps;
      const long nhi = dense_negative_count(g, hi, bc);
      if (nhi != nlo) {
        double x = lo, y = hi;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (x + y);
          (dense_negative_count(g, m, bc) == nlo ? x : y) = m;
        }
        for (long r = 0; r < nhi - nlo; ++r) roots.push_back(0.5 * (x + y));
      }
      lo = hi;
      nlo = nhi;
    }
  }
  return roots;
}

}  // namespace metriq::testing
