#include "metriq/secular.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "metriq/error.hpp"

namespace metriq {

Eigen::VectorXd SecularMatrix::expand(const Eigen::VectorXd& reduced) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<long>(row_of_vertex.size()));
  for (std::size_t r = 0; r < vertex_of_row.size(); ++r) full[vertex_of_row[r]] = reduced[r];
  return full;
}

Eigen::VectorXd SecularMatrix::reduce(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(static_cast<long>(vertex_of_row.size()));
  for (std::size_t r = 0; r < vertex_of_row.size(); ++r) out[r] = full[vertex_of_row[r]];
  return out;
}

std::vector<long> free_rows(const MetricGraph& g, Boundary boundary, std::size_t* count) {
  std::vector<long> rows(g.num_vertices(), -1);
  long next = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (boundary == Boundary::Free || !g.vertex(v).boundary) rows[v] = next++;
  if (count) *count = static_cast<std::size_t>(next);
  return rows;
}

bool edge_enters(const MetricGraph& g, std::size_t e, Boundary boundary) {
  if (boundary == Boundary::Free) return true;
  const auto& ed = g.edge(e);
  return !(g.vertex(ed.tail).boundary && g.vertex(ed.head).boundary);
}

std::vector<std::size_t> pole_edges(const MetricGraph& g, double k, Boundary boundary, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (edge_enters(g, e, boundary) && std::abs(std::sin(k * g.edge(e).length)) < tol) out.push_back(e);
  return out;
}

SecularMatrix assemble(const MetricGraph& g, double k, Boundary boundary) {
  if (!(k > 0.0)) throw Error(ErrorKind::OutOfRange, "k must be positive");
  auto poles = pole_edges(g, k, boundary);
  if (!poles.empty()) throw PoleError(ErrorKind::PoleAt, k, std::move(poles));

  SecularMatrix S;
  S.k = k;
  S.boundary = boundary;
  std::size_t n = 0;
  S.row_of_vertex = free_rows(g, boundary, &n);
  S.vertex_of_row.resize(n);
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (S.row_of_vertex[v] >= 0) S.vertex_of_row[S.row_of_vertex[v]] = v;

  std::vector<Eigen::Triplet<double>> tl, td;
  tl.reserve(4 * g.num_edges());
  td.reserve(4 * g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    const long a = S.row_of_vertex[ed.tail], b = S.row_of_vertex[ed.head];
    if (a < 0 && b < 0) continue;
    const double x = k * ed.length;
    const double s = std::sin(x), c = std::cos(x);
    const double cot = c / s, csc = 1.0 / s;
    const double dcot = -ed.length * csc * csc, dcsc = ed.length * csc * cot;
    for (long r : {a, b})
      if (r >= 0) {
        tl.emplace_back(r, r, cot);
        td.emplace_back(r, r, dcot);
      }
    if (a >= 0 && b >= 0) {
      tl.emplace_back(a, b, -csc);
      tl.emplace_back(b, a, -csc);
      td.emplace_back(a, b, dcsc);
      td.emplace_back(b, a, dcsc);
    }
  }
  S.L.resize(static_cast<long>(n), static_cast<long>(n));
  S.dL.resize(static_cast<long>(n), static_cast<long>(n));
  S.L.setFromTriplets(tl.begin(), tl.end());
  S.dL.setFromTriplets(td.begin(), td.end());
  S.L.makeCompressed();
  S.dL.makeCompressed();
  return S;
}

std::vector<double> pole_locations(const MetricGraph& g, double kmin, double kmax, Boundary boundary,
                                   bool entering_only) {
  std::vector<double> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (entering_only && !edge_enters(g, e, boundary)) continue;
    const double step = std::numbers::pi / g.edge(e).length;
    for (long n = std::max(1L, static_cast<long>(std::ceil(kmin / step))); n * step <= kmax; ++n)
      out.push_back(n * step);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double p : out)
    if (uniq.empty() || p - uniq.back() > 1e-12 * std::max(1.0, p)) uniq.push_back(p);
  return uniq;
}

// ------------------------------------------------------------ factorization

struct SymmetricFactor::Impl {
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

SymmetricFactor::SymmetricFactor(const SparseMatrix& A) : impl_(new Impl) {
  impl_->ldlt.compute(A);
  ok_ = impl_->ldlt.info() == Eigen::Success;
  if (ok_) {
    const auto& d = impl_->ldlt.vectorD();
    for (long i = 0; i < d.size(); ++i)
      if (!std::isfinite(d[i]) || d[i] == 0.0) ok_ = false;
  }
}

SymmetricFactor::~SymmetricFactor() { delete impl_; }

long SymmetricFactor::negative_count() const {
  const auto& d = impl_->ldlt.vectorD();
  return static_cast<long>((d.array() < 0.0).count());
}

double SymmetricFactor::min_abs_pivot() const { return impl_->ldlt.vectorD().cwiseAbs().minCoeff(); }

Eigen::VectorXd SymmetricFactor::solve(const Eigen::VectorXd& b) const { return impl_->ldlt.solve(b); }

double SymmetricFactor::trace_inverse_times(const SparseMatrix& B) const {
  const SparseMatrix& Lf = impl_->ldlt.matrixL().nestedExpression();
  const auto& D = impl_->ldlt.vectorD();
  const long n = Lf.cols();
  // copy the strictly lower factor column by column with sorted rows
  std::vector<long> ptr(n + 1, 0);
  std::vector<long> row;
  std::vector<double> val;
  row.reserve(Lf.nonZeros());
  val.reserve(Lf.nonZeros());
  for (long j = 0; j < n; ++j) {
    const std::size_t begin = row.size();
    for (SparseMatrix::InnerIterator it(Lf, j); it; ++it)
      if (it.row() > j) {
        row.push_back(it.row());
        val.push_back(it.value());
      }
    std::vector<std::size_t> order(row.size() - begin);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = begin + i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return row[a] < row[b]; });
    std::vector<long> r2;
    std::vector<double> v2;
    for (auto o : order) {
      r2.push_back(row[o]);
      v2.push_back(val[o]);
    }
    std::copy(r2.begin(), r2.end(), row.begin() + begin);
    std::copy(v2.begin(), v2.end(), val.begin() + begin);
    ptr[j + 1] = static_cast<long>(row.size());
  }

  // Takahashi recurrence: Z = A^{-1} on the filled pattern
  std::vector<double> zoff(row.size(), 0.0), zdiag(n, 0.0);
  auto z = [&](long i, long j) -> double {
    if (i == j) return zdiag[i];
    const long c = std::min(i, j), r = std::max(i, j);
    const auto first = row.begin() + ptr[c], last = row.begin() + ptr[c + 1];
    const auto it = std::lower_bound(first, last, r);
    if (it == last || *it != r) return 0.0;  // outside the filled pattern
    return zoff[static_cast<std::size_t>(it - row.begin())];
  };
  std::vector<double> tmp;
  for (long j = n - 1; j >= 0; --j) {
    const long b = ptr[j], e = ptr[j + 1];
    tmp.assign(static_cast<std::size_t>(e - b), 0.0);
    for (long p = b; p < e; ++p) {
      double s = 0.0;
      for (long q = b; q < e; ++q) s += z(row[p], row[q]) * val[q];
      tmp[p - b] = -s;
    }
    double d = 1.0 / D[j];
    for (long p = b; p < e; ++p) {
      zoff[p] = tmp[p - b];
      d -= val[p] * tmp[p - b];
    }
    zdiag[j] = d;
  }

  const auto& perm = impl_->ldlt.permutationP().indices();
  double tr = 0.0;
  for (long c = 0; c < B.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(B, c); it; ++it) tr += z(perm[it.row()], perm[it.col()]) * it.value();
  return tr;
}

// ------------------------------------------------------------ equilateral

Eigen::VectorXd equilateral_spectrum(const MetricGraph& g) {
  const long n = static_cast<long>(g.num_vertices());
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const double w = 1.0 / std::sqrt(static_cast<double>(g.degree(e.tail) * g.degree(e.head)));
    S(e.tail, e.head) += w;
    S(e.head, e.tail) += w;
  }
  S -= Eigen::MatrixXd::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

double common_length(const MetricGraph& g) {
  const double l = g.edge(0).length;
  for (const auto& e : g.edges())
    if (std::abs(e.length - l) > 1e-12 * l)
      throw Error(ErrorKind::NotEquilateral, "edge lengths differ");
  return l;
}

}  // namespace

double equilateral_correspondence(const MetricGraph& g, const Eigen::VectorXd& spectrum, double k) {
  const double l = common_length(g);
  if (std::abs(std::sin(k * l)) < kPoleTol) throw PoleError(ErrorKind::PoleAt, k, {0});
  const double s = std::sin(0.5 * k * l);
  const double target = -2.0 * s * s;
  return (spectrum.array() - target).abs().minCoeff();
}

double equilateral_correspondence(const MetricGraph& g, double k) {
  common_length(g);
  return equilateral_correspondence(g, equilateral_spectrum(g), k);
}

// ------------------------------------------------------------ spider web

namespace {

struct RadialGeometry {
  std::vector<double> r;  // ring radii, innermost first
  int rows_rings;         // rings carrying a row
  double chord_factor;    // 2 sin(dtheta/2)
  double dtheta;
};

RadialGeometry radial_geometry(const SpiderSpec& spec) {
  RadialGeometry geo;
  geo.r = spider_radii(spec);
  geo.dtheta = spec.dtheta();
  geo.chord_factor = 2.0 * std::sin(0.5 * geo.dtheta);
  geo.rows_rings = spec.clamped ? spec.rings - 1 : spec.rings;
  return geo;
}

std::vector<double> radial_lengths(const RadialGeometry& geo, int m) {
  std::vector<double> ls;
  const int K = static_cast<int>(geo.r.size());
  for (int i = 0; i < geo.rows_rings; ++i) {
    ls.push_back(geo.r[i] * geo.chord_factor);
    ls.push_back(geo.r[i] - (i ? geo.r[i - 1] : 0.0));
    if (i + 1 < K) ls.push_back(geo.r[i + 1] - geo.r[i]);
  }
  if (m == 0) ls.push_back(geo.r[0]);
  return ls;
}

/// Diagonal and off-diagonal of the radial tridiagonal system.
void radial_tridiagonal(const RadialGeometry& geo, int m, double k, std::vector<double>& diag,
                        std::vector<double>& off) {
  for (double l : radial_lengths(geo, m))
    if (std::abs(std::sin(k * l)) < kPoleTol) throw PoleError(ErrorKind::PoleAt, k, {});
  auto cot = [](double x) { return std::cos(x) / std::sin(x); };
  auto csc = [](double x) { return 1.0 / std::sin(x); };
  const int K = static_cast<int>(geo.r.size());
  diag.clear();
  off.clear();
  if (m == 0) {
    diag.push_back(cot(k * geo.r[0]));
    if (geo.rows_rings > 0) off.push_back(-csc(k * geo.r[0]));
  }
  const double cm = std::cos(m * geo.dtheta);
  for (int i = 0; i < geo.rows_rings; ++i) {
    const double c = geo.r[i] * geo.chord_factor;
    const double din = geo.r[i] - (i ? geo.r[i - 1] : 0.0);
    double d = 2.0 * cot(k * c) - 2.0 * cm * csc(k * c) + cot(k * din);
    if (i + 1 < K) {
      const double dout = geo.r[i + 1] - geo.r[i];
      d += cot(k * dout);
      if (i + 1 < geo.rows_rings) off.push_back(-csc(k * dout));
    }
    diag.push_back(d);
  }
}

long tridiagonal_negative_count(const std::vector<double>& a, const std::vector<double>& b) {
  long neg = 0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = i == 0 ? a[0] : a[i] - b[i - 1] * b[i - 1] / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++neg;
  }
  return neg;
}

}  // namespace

Eigen::MatrixXd spider_radial_matrix(const SpiderSpec& spec, int m, double k) {
  if (m < 0 || m > spec.M) throw Error(ErrorKind::OutOfRange, "angular mode out of range");
  const auto geo = radial_geometry(spec);
  std::vector<double> a, b;
  radial_tridiagonal(geo, m, k, a, b);
  const long n = static_cast<long>(a.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (long i = 0; i < n; ++i) T(i, i) = a[i];
  for (long i = 0; i + 1 < n; ++i) T(i, i + 1) = T(i + 1, i) = b[i];
  return T;
}

long spider_radial_negative_count(const SpiderSpec& spec, int m, double k) {
  const auto geo = radial_geometry(spec);
  std::vector<double> a, b;
  radial_tridiagonal(geo, m, k, a, b);
  return tridiagonal_negative_count(a, b);
}

std::vector<RadialRoot> spider_radial_roots(const SpiderSpec& spec, int m, double kmin, double kmax,
                                            double tol) {
  if (m < 0 || m > spec.M) throw Error(ErrorKind::OutOfRange, "angular mode out of range");
  const auto geo = radial_geometry(spec);
  std::vector<double> a, b;
  auto count = [&](double k) {
    radial_tridiagonal(geo, m, k, a, b);
    return tridiagonal_negative_count(a, b);
  };
  // poles split [kmin, kmax] into intervals where the count is monotone
  std::vector<double> poles;
  for (double l : radial_lengths(geo, m)) {
    const double step = std::numbers::pi / l;
    for (long n = std::max(1L, static_cast<long>(std::ceil(kmin / step))); n * step <= kmax; ++n)
      poles.push_back(n * step);
  }
  std::sort(poles.begin(), poles.end());
  std::vector<double> cuts{kmin};
  for (double p : poles)
    if (p - cuts.back() > 1e-9) cuts.push_back(p);
  if (kmax - cuts.back() > 1e-9) cuts.push_back(kmax);

  // evaluate just inside an interval end, backing off from nearby poles
  auto safe_count = [&](double& k, double dir) {
    double off = 1e-9 * std::max(1.0, std::abs(k));
    for (int t = 0; t < 8; ++t, off *= 10.0) {
      try {
        const double kk = k + dir * off;
        const long c = count(kk);
        k = kk;
        return c;
      } catch (const PoleError&) {
      }
    }
    throw Error(ErrorKind::ConvergenceFailure, "cannot evaluate radial system near k = " + std::to_string(k));
  };

  std::vector<RadialRoot> roots;
  std::function<void(double, long, double, long)> bisect = [&](double lo, long nlo, double hi, long nhi) {
    if (nhi == nlo) return;
    if (hi - lo < tol * std::max(1.0, hi)) {
      roots.push_back({0.5 * (lo + hi), m, static_cast<int>(nhi - nlo)});
      return;
    }
    double mid = 0.5 * (lo + hi);
    long nmid;
    try {
      nmid = count(mid);
    } catch (const PoleError&) {
      mid = lo + 0.49 * (hi - lo);
      nmid = count(mid);
    }
    bisect(lo, nlo, mid, nmid);
    bisect(mid, nmid, hi, nhi);
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    const bool lo_is_pole = i > 0 || std::find(poles.begin(), poles.end(), lo) != poles.end();
    const bool hi_is_pole = i + 2 < cuts.size() || std::find(poles.begin(), poles.end(), hi) != poles.end();
    const long nlo = lo_is_pole ? safe_count(lo, +1.0) : count(lo);
    const long nhi = hi_is_pole ? safe_count(hi, -1.0) : count(hi);
    bisect(lo, nlo, hi, nhi);
  }
  std::sort(roots.begin(), roots.end(), [](auto& x, auto& y) { return x.k < y.k; });
  return roots;
}

std::vector<RadialRoot> spider_reduced_spectrum(const SpiderSpec& spec, double kmin, double kmax,
                                                double tol) {
  std::vector<RadialRoot> all;
  for (int m = 0; m <= spec.M / 2; ++m) {
    const int weight = (m == 0 || 2 * m == spec.M) ? 1 : 2;
    for (auto r : spider_radial_roots(spec, m, kmin, kmax, tol)) {
      r.multiplicity *= weight;
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.k < y.k; });
  return all;
}

}  // namespace metriq
