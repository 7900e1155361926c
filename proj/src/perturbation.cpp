#include "metriq/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metriq/error.hpp"
#include "metriq/quadrature.hpp"
#include "metriq/spherical_harmonics.hpp"

namespace metriq {

double soccer_ball_edge_length() { return std::sqrt((2.0 / 109.0) * (29.0 - 9.0 * std::sqrt(5.0))); }

namespace {

struct Factor {
  std::vector<double> coeffs;  // monic, highest degree first
  int power;
  std::string name;
};

const std::vector<Factor>& factors() {
  static const std::vector<Factor> f{
      {{1, -3}, 1, "g-3"},
      {{1, -1}, 9, "g-1"},
      {{1, 2}, 4, "g+2"},
      {{1, -1, -3}, 5, "g^2-g-3"},
      {{1, 1, -4}, 4, "g^2+g-4"},
      {{1, 1, -1}, 5, "g^2+g-1"},
      {{1, 3, 1}, 3, "g^2+3g+1"},
      {{1, -3, -2, 7, 1}, 3, "g^4-3g^3-2g^2+7g+1"},
  };
  return f;
}

std::vector<double> real_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {-c[1]};
  if (n == 2) {
    const double s = std::sqrt(c[1] * c[1] - 4.0 * c[2]);
    return {0.5 * (-c[1] - s), 0.5 * (-c[1] + s)};
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) C(0, i) = -c[static_cast<std::size_t>(i + 1)];
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  // the factors are characteristic polynomials of symmetric blocks: all roots real
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()[i].real());
  // polish on the polynomial
  for (double& x : r)
    for (int it = 0; it < 3; ++it) {
      double p = 0.0, dp = 0.0;
      for (double a : c) {
        dp = dp * x + p;
        p = p * x + a;
      }
      if (dp != 0.0) x -= p / dp;
    }
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

std::vector<ExactLevel> soccer_ball_exact_spectrum() {
  const double l = soccer_ball_edge_length();
  std::vector<ExactLevel> out;
  for (const auto& f : factors())
    for (double g : real_roots(f.coeffs))
      out.push_back({g, std::acos(std::clamp(g / 3.0, -1.0, 1.0)) / l, f.power, f.name});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  return out;
}

std::vector<ExactLevel> soccer_ball_exact_roots(double kmin, double kmax) {
  const double l = soccer_ball_edge_length();
  std::vector<ExactLevel> out;
  for (const auto& base : soccer_ball_exact_spectrum()) {
    const double th = base.k * l;
    if (th < 1e-12 || std::numbers::pi - th < 1e-12) continue;  // lands on a pole
    for (int n = 0; 2.0 * std::numbers::pi * n - th <= kmax * l; ++n)
      for (double s : {-1.0, 1.0}) {
        if (n == 0 && s < 0) continue;
        const double k = (2.0 * std::numbers::pi * n + s * th) / l;
        if (k >= kmin && k <= kmax) {
          ExactLevel e = base;
          e.k = k;
          out.push_back(e);
        }
      }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  return out;
}

PerturbationProblem make_problem(const MetricGraph& g, const ContinuumField& field, int j, bool n_factor) {
  if (g.domain().kind != DomainKind::Sphere) throw Error(ErrorKind::InvalidSpec, "perturbation theory needs a sphere graph");
  if (j < 0) throw Error(ErrorKind::OutOfRange, "j must be nonnegative");
  if (std::abs(g.domain().radius - 1.0) > 1e-12) throw Error(ErrorKind::InvalidSpec, "sphere graph must lie on the unit sphere");
  PerturbationProblem p;
  p.graph = &g;
  p.field = field;
  p.j = j;
  p.lambda0 = -j * (j + 1.0) / field.dim;
  p.n_factor = n_factor;
  return p;
}

ABMatrices assemble_AB(const PerturbationProblem& p) {
  const MetricGraph& g = *p.graph;
  const int N = 2 * p.j + 1;
  ABMatrices ab;
  ab.A = Eigen::MatrixXd::Zero(N, N);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Eigen::Vector3d& x = g.vertex(v).pos;
    const Eigen::Matrix3d P = tangent_projector(x);
    const Eigen::Matrix3d Rt = P * p.field.R[v] * P;
    const auto H = real_spherical_harmonics(p.j, x);
    ab.A += H.gradients * Rt * H.gradients.transpose() + p.lambda0 * Rt.trace() * H.values * H.values.transpose();
  }
  ab.A /= static_cast<double>(g.num_vertices());
  ab.A = 0.5 * (ab.A + ab.A.transpose()).eval();

  // products of degree-j harmonics are degree 2j polynomials in cos(theta)
  // and trigonometric of order 2j in phi
  const int nt = p.j + 2, np = 2 * p.j + 2;
  const auto& gl = gauss_legendre(nt);
  Eigen::MatrixXd I = Eigen::MatrixXd::Zero(N, N);
  for (int a = 0; a < nt; ++a) {
    const double z = gl.nodes[static_cast<std::size_t>(a)], s = std::sqrt(1.0 - z * z);
    for (int b = 0; b < np; ++b) {
      const double ph = 2.0 * std::numbers::pi * b / np;
      const auto H = real_spherical_harmonics(p.j, Eigen::Vector3d(s * std::cos(ph), s * std::sin(ph), z));
      I += (gl.weights[static_cast<std::size_t>(a)] * 2.0 * std::numbers::pi / np) * H.values * H.values.transpose();
    }
  }
  const double scale = p.field.dim * p.field.r0 / p.field.omega_volume * (p.n_factor ? N : 1);
  ab.B = -scale * I;
  return ab;
}

SplittingResult splittings(const PerturbationProblem& p) {
  const auto ab = assemble_AB(p);
  const Eigen::MatrixXd negB = -ab.B;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bs(negB, Eigen::EigenvaluesOnly);
  if (!(bs.eigenvalues().minCoeff() > 1e-14 * std::max(1.0, bs.eigenvalues().cwiseAbs().maxCoeff())))
    throw Error(ErrorKind::SingularB, "B is not definite for j = " + std::to_string(p.j));
  // A u = l B u  <=>  (-A) u = l (-B) u with -B positive definite
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(-ab.A, negB);
  SplittingResult s;
  s.j = p.j;
  s.lambda0 = p.lambda0;
  s.lambda1 = es.eigenvalues();
  s.U = es.eigenvectors();
  s.k_pred.resize(s.lambda1.size());
  for (long i = 0; i < s.lambda1.size(); ++i) s.k_pred[i] = std::sqrt(std::max(0.0, -p.lambda0 - s.lambda1[i]));
  std::sort(s.k_pred.begin(), s.k_pred.end());
  return s;
}

Spectrum sphere_level_spectrum(const MetricGraph& g, int jmax, const SolverConfig& base) {
  const int need = (jmax + 1) * (jmax + 1);
  SolverConfig cfg = base;
  cfg.k_min = std::min(cfg.k_min, 0.05);
  double kmax = 1.25 * std::sqrt(jmax * (jmax + 1) / 2.0);
  for (int attempt = 0; attempt < 6; ++attempt) {
    cfg.k_max = kmax;
    auto sp = solve_spectrum(g, cfg, Boundary::Free);
    if (sp.total_multiplicity() >= need) return sp;  // k = 0 plus one value past the top level
    kmax *= 1.3;
  }
  throw Error(ErrorKind::NoRootsFound, "too few roots below the requested level");
}

std::vector<double> sphere_graph_levels(const MetricGraph& g, int jmax, const SolverConfig& base) {
  std::vector<double> ks{0.0};
  for (double k : sphere_level_spectrum(g, jmax, base).expanded()) ks.push_back(k);
  return ks;
}

LevelComparison compare_level(const SplittingResult& s, const std::vector<double>& observed) {
  const int N = 2 * s.j + 1;
  const std::size_t first = static_cast<std::size_t>(s.j * s.j);
  if (observed.size() < first + N) throw Error(ErrorKind::OutOfRange, "not enough observed values");
  LevelComparison c;
  c.j = s.j;
  c.lambda0 = s.lambda0;
  c.k_tilde = std::sqrt(-s.lambda0);
  c.k_pred = s.k_pred;
  // k_pred ascending pairs with lambda1 descending
  c.lambda1 = s.lambda1.reverse();
  c.k_obs.resize(N);
  for (int i = 0; i < N; ++i) c.k_obs[i] = observed[first + static_cast<std::size_t>(i)];
  std::sort(c.k_obs.begin(), c.k_obs.end());
  for (int i = 0; i < N; ++i) {
    c.eta0 += std::abs(c.k_obs[i] - c.k_tilde) / c.k_tilde;
    c.eta1 += std::abs(c.k_obs[i] - c.k_pred[i]) / c.k_pred[i];
  }
  c.eta0 /= N;
  c.eta1 /= N;
  return c;
}

std::vector<LevelComparison> perturbation_study(const MetricGraph& g, int jmax, const SolverConfig& base,
                                                bool n_factor) {
  const auto field = compute_field(g, DensityMode::Empirical);
  const auto obs = sphere_graph_levels(g, jmax, base);
  std::vector<LevelComparison> out;
  for (int j = 1; j <= jmax; ++j) out.push_back(compare_level(splittings(make_problem(g, field, j, n_factor)), obs));
  return out;
}

}  // namespace metriq
