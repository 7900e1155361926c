#include "metriq/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metriq/error.hpp"
#include "metriq/parallel.hpp"

namespace metriq {

int intrinsic_dim(const MetricGraph& g) {
  return g.domain().kind == DomainKind::Sphere ? 2 : g.dim();
}

Eigen::Matrix3d r_tensor(const MetricGraph& g, std::size_t v) {
  Eigen::Matrix3d R = Eigen::Matrix3d::Zero();
  for (const auto& inc : g.neighbors(v)) {
    const Eigen::Vector3d r = g.edge_vector(inc.edge, v);
    const double len = r.norm();
    R += (r * r.transpose()) / len;
  }
  return R;
}

Eigen::Matrix3d metric_estimate(const MetricGraph& g, std::size_t v) {
  Eigen::Matrix3d S = Eigen::Matrix3d::Zero();
  for (const auto& inc : g.neighbors(v)) {
    const Eigen::Vector3d r = g.edge_vector(inc.edge, v).normalized();
    S += r * r.transpose();
  }
  return (static_cast<double>(intrinsic_dim(g)) / static_cast<double>(g.degree(v))) * S;
}

Eigen::Matrix3d tangent_projector(const Eigen::Vector3d& x) {
  const Eigen::Vector3d n = x.normalized();
  return Eigen::Matrix3d::Identity() - n * n.transpose();
}

// ------------------------------------------------------------ Voronoi cells

namespace {

using Pt = Eigen::Vector2d;
using Polygon = std::vector<Pt>;

/// Keeps the part of poly with n . p <= c.
Polygon clip(const Polygon& poly, const Pt& n, double c) {
  Polygon out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % m];
    const double fp = n.dot(p) - c, fq = n.dot(q) - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

double polygon_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - p.y() * q.x();
  }
  return 0.5 * std::abs(a);
}

double cross2(const Pt& a, const Pt& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Signed area of triangle (0, a, b) intersected with the disc |p| <= r.
double tri_disc_area(const Pt& a, const Pt& b, double r) {
  const Pt d = b - a;
  const double A = d.squaredNorm(), B = 2.0 * a.dot(d), C = a.squaredNorm() - r * r;
  std::vector<double> ts{0.0};
  const double disc = B * B - 4 * A * C;
  const bool crosses = A > 0 && disc > 0;  // otherwise the line misses the open disc
  if (crosses) {
    const double s = std::sqrt(disc);
    for (double t : {(-B - s) / (2 * A), (-B + s) / (2 * A)})
      if (t > 0.0 && t < 1.0) ts.push_back(t);
  }
  ts.push_back(1.0);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const Pt p = a + ts[i] * d, q = a + ts[i + 1] * d;
    const Pt mid = 0.5 * (p + q);
    if (crosses && mid.squaredNorm() <= r * r)
      area += 0.5 * cross2(p, q);
    else
      area += 0.5 * r * r * std::atan2(cross2(p, q), p.dot(q));
  }
  return area;
}

double polygon_disc_area(const Polygon& poly, const Pt& center, double r) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    a += tri_disc_area(poly[i] - center, poly[(i + 1) % poly.size()] - center, r);
  return std::abs(a);
}

double max_radius(const Polygon& poly, const Pt& x) {
  double m = 0.0;
  for (const auto& p : poly) m = std::max(m, (p - x).norm());
  return m;
}

/// Voronoi cell of x among `others` (displacements from x), clipped to the
/// starting polygon.
Polygon flat_cell(Polygon cell, std::vector<Pt> others) {
  std::sort(others.begin(), others.end(), [](const Pt& a, const Pt& b) { return a.squaredNorm() < b.squaredNorm(); });
  for (const auto& d : others) {
    if (cell.empty()) break;
    if (d.norm() > 2.0 * max_radius(cell, Pt::Zero()) * (1.0 + 1e-12)) break;
    // keep p with |p| <= |p - d|, i.e. d . p <= |d|^2 / 2
    cell = clip(cell, d, 0.5 * d.squaredNorm());
  }
  return cell;
}

double sphere_cell_area(const MetricGraph& g, std::size_t v) {
  const Eigen::Vector3d x = g.vertex(v).pos.normalized();
  const Eigen::Vector3d helper = std::abs(x.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (helper - helper.dot(x) * x).normalized();
  const Eigen::Vector3d e2 = x.cross(e1);
  const double W = 20.0;
  Polygon cell{{-W, -W}, {W, -W}, {W, W}, {-W, W}};
  std::vector<std::pair<double, Eigen::Vector3d>> others;
  for (std::size_t w = 0; w < g.num_vertices(); ++w)
    if (w != v) {
      const Eigen::Vector3d y = g.vertex(w).pos.normalized();
      others.push_back({std::acos(std::clamp(x.dot(y), -1.0, 1.0)), y});
    }
  std::sort(others.begin(), others.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (const auto& [ang, y] : others) {
    double cell_ang = 0.0;
    for (const auto& p : cell) cell_ang = std::max(cell_ang, std::atan(p.norm()));
    if (ang > 2.0 * cell_ang * (1.0 + 1e-12)) break;
    // gnomonic point p = x + a e1 + b e2 is closer to x when p . (x - y) >= 0
    const Eigen::Vector3d dxy = x - y;
    const Pt n(-e1.dot(dxy), -e2.dot(dxy));
    cell = clip(cell, n, x.dot(dxy));
  }
  for (const auto& p : cell)
    if (std::abs(p.x()) >= W * (1 - 1e-9) || std::abs(p.y()) >= W * (1 - 1e-9))
      throw Error(ErrorKind::UnboundedCell, "spherical cell of vertex " + std::to_string(v) + " is not closed");
  // solid angle as a fan of triangles around x
  double area = 0.0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const Eigen::Vector3d a = (x + cell[i].x() * e1 + cell[i].y() * e2).normalized();
    const Pt& q = cell[(i + 1) % cell.size()];
    const Eigen::Vector3d b = (x + q.x() * e1 + q.y() * e2).normalized();
    const double num = x.dot(a.cross(b));
    const double den = 1.0 + x.dot(a) + a.dot(b) + b.dot(x);
    area += 2.0 * std::atan2(num, den);
  }
  const double r = g.domain().radius;
  return std::abs(area) * r * r;
}

}  // namespace

std::vector<double> dual_cell_volumes(const MetricGraph& g) {
  const auto& dom = g.domain();
  const std::size_t n = g.num_vertices();
  std::vector<double> vol(n, 0.0);
  if (dom.kind == DomainKind::None) throw Error(ErrorKind::UnboundedCell, "graph has no ambient domain");
  if (dom.kind == DomainKind::Sphere) {
    parallel_for(n, [&](std::size_t v) { vol[v] = sphere_cell_area(g, v); });
    return vol;
  }
  if (g.dim() != 2) throw Error(ErrorKind::UnboundedCell, "flat dual cells need a planar graph");
  parallel_for(n, [&](std::size_t v) {
    const Pt x = g.vertex(v).pos.head<2>();
    std::vector<Pt> others;
    Polygon start;
    if (dom.kind == DomainKind::Torus) {
      const Pt P = dom.hi - dom.lo;
      start = {{-0.5 * P.x(), -0.5 * P.y()}, {0.5 * P.x(), -0.5 * P.y()}, {0.5 * P.x(), 0.5 * P.y()},
               {-0.5 * P.x(), 0.5 * P.y()}};
      for (std::size_t w = 0; w < n; ++w) {
        Pt d = g.vertex(w).pos.head<2>() - x;
        for (int a = 0; a < 2; ++a) d[a] -= P[a] * std::round(d[a] / P[a]);
        for (int i = -1; i <= 1; ++i)
          for (int j = -1; j <= 1; ++j) {
            if (w == v && i == 0 && j == 0) continue;
            others.push_back(d + Pt(i * P.x(), j * P.y()));
          }
      }
      vol[v] = polygon_area(flat_cell(start, others));
      return;
    }
    Pt lo, hi;
    if (dom.kind == DomainKind::Box) {
      lo = dom.lo - x;
      hi = dom.hi - x;
    } else {
      lo = dom.center - x - Pt::Constant(dom.radius);
      hi = dom.center - x + Pt::Constant(dom.radius);
    }
    start = {{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}};
    for (std::size_t w = 0; w < n; ++w)
      if (w != v) others.push_back(g.vertex(w).pos.head<2>() - x);
    const Polygon cell = flat_cell(start, others);
    vol[v] = dom.kind == DomainKind::Box ? polygon_area(cell)
                                         : polygon_disc_area(cell, dom.center - x, dom.radius);
  });
  return vol;
}

std::vector<double> vertex_density(const MetricGraph& g, DensityMode mode) {
  if (mode == DensityMode::Empirical) return std::vector<double>(g.num_vertices(), 1.0);
  auto vol = dual_cell_volumes(g);
  for (std::size_t v = 0; v < vol.size(); ++v) {
    if (!(vol[v] > 0.0)) throw Error(ErrorKind::UnboundedCell, "vertex " + std::to_string(v) + " has an empty cell");
    vol[v] = 1.0 / vol[v];
  }
  return vol;
}

Homogenized homogenized_constants(const MetricGraph& g) {
  double r0 = 0.0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    double s = 0.0;
    for (const auto& inc : g.neighbors(v)) s += g.edge_vector(inc.edge, v).norm();
    r0 += s / static_cast<double>(g.degree(v));
  }
  r0 /= static_cast<double>(g.num_vertices());
  const double mu0 = g.domain().kind == DomainKind::None ? 0.0 : g.num_vertices() / g.domain().volume();
  return {r0, mu0};
}

ContinuumField compute_field(const MetricGraph& g, DensityMode mode) {
  ContinuumField f;
  f.dim = intrinsic_dim(g);
  f.mode = mode;
  const std::size_t n = g.num_vertices();
  f.R.resize(n);
  f.trR.resize(n);
  f.interior.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    f.R[v] = r_tensor(g, v);
    f.trR[v] = f.R[v].trace();
    f.interior[v] = !g.vertex(v).boundary;
  }
  if (mode == DensityMode::DualCell) {
    f.cell_volume = dual_cell_volumes(g);
    f.mu.resize(n);
    for (std::size_t v = 0; v < n; ++v) f.mu[v] = f.cell_volume[v] > 0 ? 1.0 / f.cell_volume[v] : 0.0;
  } else {
    f.mu = vertex_density(g, mode);
  }
  const auto h = homogenized_constants(g);
  f.r0 = h.r0;
  f.mu0 = h.mu0;
  f.omega_volume = g.domain().kind == DomainKind::None ? 0.0 : g.domain().volume();
  return f;
}

HomogeneityReport homogeneity_report(const MetricGraph& g, const ContinuumField& field) {
  HomogeneityReport rep;
  const bool sphere = g.domain().kind == DomainKind::Sphere;
  const int d = field.dim;
  std::vector<Eigen::Vector3d> inv;  // sphere: sorted tangent eigenvalues
  std::vector<Eigen::Matrix2d> flat;
  double mean = 0.0;
  for (std::size_t v = 0; v < field.R.size(); ++v) {
    if (!field.interior[v]) continue;
    ++rep.vertices;
    if (sphere) {
      const Eigen::Matrix3d P = tangent_projector(g.vertex(v).pos);
      const Eigen::Matrix3d Rt = P * field.R[v] * P;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Rt, Eigen::EigenvaluesOnly);
      // the normal direction carries the (near) zero eigenvalue
      inv.push_back(es.eigenvalues());
      const double half_gap = 0.5 * (es.eigenvalues()[2] - es.eigenvalues()[1]);
      rep.isotropy = std::max(rep.isotropy, half_gap);
      mean += Rt.trace() / d;
    } else {
      const Eigen::Matrix2d R2 = field.R[v].topLeftCorner<2, 2>();
      flat.push_back(R2);
      const Eigen::Matrix2d dev = R2 - (R2.trace() / d) * Eigen::Matrix2d::Identity();
      rep.isotropy = std::max(rep.isotropy, std::sqrt(dev(0, 0) * dev(0, 0) + dev(0, 1) * dev(0, 1)));
      mean += R2.trace() / d;
    }
  }
  if (rep.vertices == 0) return rep;
  mean /= static_cast<double>(rep.vertices);
  if (sphere) {
    for (int i = 1; i < 3; ++i) {
      double lo = 1e300, hi = -1e300;
      for (const auto& e : inv) {
        lo = std::min(lo, e[i]);
        hi = std::max(hi, e[i]);
      }
      rep.homogeneity = std::max(rep.homogeneity, hi - lo);
    }
  } else {
    for (std::size_t a = 0; a < flat.size(); ++a)
      for (std::size_t b = a + 1; b < flat.size(); ++b) {
        const Eigen::Matrix2d D = flat[a] - flat[b];
        // spectral norm of a symmetric 2x2 matrix
        const double m = 0.5 * (D(0, 0) + D(1, 1));
        const double r = std::sqrt(0.25 * (D(0, 0) - D(1, 1)) * (D(0, 0) - D(1, 1)) + D(0, 1) * D(0, 1));
        rep.homogeneity = std::max(rep.homogeneity, std::abs(m) + r);
      }
  }
  rep.homogeneity_rel = rep.homogeneity / mean;
  rep.isotropy_rel = rep.isotropy / mean;
  return rep;
}

}  // namespace metriq
