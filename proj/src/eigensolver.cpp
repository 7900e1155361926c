#include "metriq/eigensolver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include "metriq/error.hpp"
#include "metriq/parallel.hpp"

namespace metriq {

void SolverConfig::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorKind::ConfigError, m); };
  if (!(k_min > 0.0) || !(k_max > k_min)) bad("need 0 < k_min < k_max");
  if (!(seed_density > 0.0)) bad("seed_density must be positive");
  if (!(newton_tol > 0.0) || !(dedup_tol > 0.0) || !(nullspace_tol > 0.0)) bad("tolerances must be positive");
  if (max_iter < 1) bad("max_iter must be >= 1");
  if (probe_count < 1) bad("probe_count must be >= 1");
  if (quad_order < 1) bad("quad_order must be >= 1");
  if (pole_exclusion < 0.0) bad("pole_exclusion must be nonnegative");
}

TraceMode SolverConfig::resolved_mode(std::size_t system_size) const {
  if (trace_mode != TraceMode::Auto) return trace_mode;
  return system_size > stochastic_threshold ? TraceMode::Stochastic : TraceMode::Exact;
}

std::string to_string(SeedStatus s) {
  switch (s) {
    case SeedStatus::Converged: return "converged";
    case SeedStatus::Singular: return "singular";
    case SeedStatus::Escaped: return "escaped";
    case SeedStatus::Pole: return "pole";
    case SeedStatus::MaxIter: return "max_iter";
    case SeedStatus::Inertia: return "inertia";
  }
  return "unknown";
}

int Spectrum::total_multiplicity() const {
  int s = 0;
  for (const auto& m : modes) s += m.multiplicity;
  return s;
}

std::vector<double> Spectrum::expanded() const {
  std::vector<double> out;
  for (const auto& m : modes) out.insert(out.end(), static_cast<std::size_t>(m.multiplicity), m.k);
  return out;
}

// ------------------------------------------------------------ traces

Eigen::VectorXd rademacher_probe(long n, std::uint64_t rng_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  Eigen::VectorXd u(n);
  for (long i = 0; i < n; ++i) u[i] = (gen() >> 63) ? 1.0 : -1.0;
  return u;
}

HutchinsonResult hutchinson_trace(long n, const std::function<double(const Eigen::VectorXd&)>& quad,
                                  int probes, std::uint64_t rng_seed) {
  if (probes < 1) throw Error(ErrorKind::ConfigError, "probe count must be >= 1");
  std::vector<double> samples(static_cast<std::size_t>(probes));
  for (int i = 0; i < probes; ++i) samples[i] = quad(rademacher_probe(n, rng_seed, static_cast<std::uint64_t>(i)));
  HutchinsonResult r;
  r.probes = probes;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= probes;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var = probes > 1 ? var / (probes - 1) : 0.0;
  r.estimate = mean;
  r.variance = var;
  r.std_error = std::sqrt(var / probes);
  return r;
}

double jacobi_trace_dense(const SecularMatrix& S) {
  const Eigen::MatrixXd L(S.L), dL(S.dL);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(L);
  const Eigen::MatrixXd X = lu.solve(dL);
  return X.trace();
}

NewtonStep newton_step(const MetricGraph& g, double k, Boundary boundary, TraceMode mode, int probes,
                       std::uint64_t rng_seed) {
  const auto S = assemble(g, k, boundary);
  if (S.size() == 0) throw Error(ErrorKind::InvalidSpec, "secular system is empty");
  const SymmetricFactor F(S.L);
  if (!F.ok()) throw SingularError(k);
  NewtonStep step;
  if (mode == TraceMode::Stochastic) {
    const auto h = hutchinson_trace(
        S.size(), [&](const Eigen::VectorXd& u) { return F.solve(u).dot(S.dL * u); }, probes, rng_seed);
    step.trace = h.estimate;
    step.std_error = h.std_error;
  } else {
    step.trace = F.trace_inverse_times(S.dL);
  }
  step.k_next = k - 1.0 / step.trace;
  return step;
}

long negative_count(const MetricGraph& g, double k, Boundary boundary) {
  const auto S = assemble(g, k, boundary);
  if (S.size() == 0) return 0;
  const SymmetricFactor F(S.L);
  if (F.ok()) return F.negative_count();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(S.L), Eigen::EigenvaluesOnly);
  return static_cast<long>((es.eigenvalues().array() < 0.0).count());
}

// ------------------------------------------------------------ nullspace

Eigen::VectorXd normalize_mode(const MetricGraph& g, double k, const Eigen::VectorXd& fV, int quad_order) {
  const double nrm = graph_norm(g, mode_function(g, k, fV), quad_order);
  return fV / nrm;
}

namespace {

/// Dominant |eigenvalue| of a sparse symmetric matrix by power iteration.
double spectral_radius(const SparseMatrix& A, std::uint64_t seed) {
  Eigen::VectorXd v = rademacher_probe(A.rows(), seed, 7);
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd w = A * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lam = nw;
    v = w / nw;
  }
  return lam;
}

Eigen::MatrixXd nullspace_dense(const SparseMatrix& L, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(L)};
  const auto& ev = es.eigenvalues();
  const double sigma = ev.cwiseAbs().maxCoeff();
  std::vector<long> idx;
  for (long i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) <= tol * sigma) idx.push_back(i);
  if (idx.empty()) {
    long best;
    ev.cwiseAbs().minCoeff(&best);
    idx.push_back(best);
  }
  Eigen::MatrixXd N(L.rows(), static_cast<long>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) N.col(static_cast<long>(c)) = es.eigenvectors().col(idx[c]);
  return N;
}

/// Block inverse iteration at a (near) singular L followed by Rayleigh-Ritz.
Eigen::MatrixXd nullspace_sparse(const SparseMatrix& L, double tol, std::uint64_t seed) {
  const long n = L.rows();
  const double sigma = spectral_radius(L, seed);
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  SparseMatrix A = L;
  for (int attempt = 0; attempt < 4; ++attempt) {
    lu.compute(A);
    if (lu.info() == Eigen::Success) break;
    SparseMatrix I(n, n);
    I.setIdentity();
    A = L + (1e-13 * sigma * std::pow(10.0, attempt)) * I;
  }
  if (lu.info() != Eigen::Success)
    throw Error(ErrorKind::ConvergenceFailure, "cannot factor L at the root for nullspace extraction");
  for (long p = std::min<long>(8, n);; p = std::min<long>(2 * p, n)) {
    Eigen::MatrixXd X(n, p);
    for (long c = 0; c < p; ++c) X.col(c) = rademacher_probe(n, seed, 1000 + static_cast<std::uint64_t>(c));
    for (int it = 0; it < 3; ++it) {
      for (long c = 0; c < p; ++c) X.col(c) = lu.solve(Eigen::VectorXd(X.col(c)));
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
      X = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    }
    const Eigen::MatrixXd H = X.transpose() * (L * X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (H + H.transpose()));
    std::vector<long> idx;
    for (long i = 0; i < p; ++i)
      if (std::abs(es.eigenvalues()[i]) <= tol * sigma) idx.push_back(i);
    if (static_cast<long>(idx.size()) >= p - 1 && p < n) continue;
    if (idx.empty()) {
      long best;
      es.eigenvalues().cwiseAbs().minCoeff(&best);
      idx.push_back(best);
    }
    Eigen::MatrixXd N(n, static_cast<long>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) N.col(static_cast<long>(c)) = X * es.eigenvectors().col(idx[c]);
    return N;
  }
}

void fix_sign(Eigen::VectorXd& v) {
  const double big = v.cwiseAbs().maxCoeff();
  for (long i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > 1e-6 * big) {
      if (v[i] < 0) v = -v;
      return;
    }
}

constexpr long kDenseNullspaceLimit = 400;

}  // namespace

EigenMode extract_mode(const MetricGraph& g, double k, Boundary boundary, const SolverConfig& cfg) {
  auto nullspace = [&](const SparseMatrix& L) {
    return L.rows() <= kDenseNullspaceLimit ? nullspace_dense(L, cfg.nullspace_tol)
                                            : nullspace_sparse(L, cfg.nullspace_tol, cfg.rng_seed);
  };
  auto S = assemble(g, k, boundary);
  EigenMode mode;
  mode.k = k;
  if (S.size() == 0) return mode;
  Eigen::MatrixXd N = nullspace(S.L);
  // Newton on the near-null eigenvalue branches: with A = N^T L N and
  // B = N^T L' N the branches cross zero at k + eig(A, -B). Multiple roots
  // converge quadratically here, unlike the trace iteration.
  for (int it = 0; it < 4; ++it) {
    const Eigen::MatrixXd A = N.transpose() * (S.L * N);
    const Eigen::MatrixXd B = -(N.transpose() * (S.dL * N));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ge(0.5 * (A + A.transpose()), 0.5 * (B + B.transpose()),
                                                                 Eigen::EigenvaluesOnly);
    if (ge.info() != Eigen::Success) break;
    const double delta = ge.eigenvalues().mean();
    if (!std::isfinite(delta) || std::abs(delta) > 1e-6 * std::max(1.0, k)) break;
    if (std::abs(delta) <= 4e-16 * k) break;
    const double next = k + delta;
    if (!pole_edges(g, next, boundary).empty()) break;
    auto Sn = assemble(g, next, boundary);
    Eigen::MatrixXd Nn = nullspace(Sn.L);
    if (Nn.cols() != N.cols()) break;
    k = next;
    S = std::move(Sn);
    N = std::move(Nn);
  }
  mode.k = k;
  const long m = N.cols();
  std::vector<Eigen::VectorXd> full(static_cast<std::size_t>(m));
  std::vector<EdgeFunction> fs;
  for (long c = 0; c < m; ++c) {
    full[c] = S.expand(N.col(c));
    fs.push_back(mode_function(g, k, full[c]));
  }
  // Loewdin orthonormalization in the graph inner product
  const Eigen::MatrixXd G = graph_gram(g, fs, cfg.quad_order);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Eigen::MatrixXd W = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            es.eigenvectors().transpose();
  mode.multiplicity = static_cast<int>(m);
  for (long c = 0; c < m; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<long>(g.num_vertices()));
    for (long r = 0; r < m; ++r) v += W(r, c) * full[r];
    fix_sign(v);
    const Eigen::VectorXd red = S.reduce(v);
    const double res = (S.L * red).cwiseAbs().maxCoeff() / red.cwiseAbs().maxCoeff();
    mode.residual = std::max(mode.residual, res);
    mode.kirchhoff = std::max(mode.kirchhoff, kirchhoff_residual(g, k, v, boundary));
    mode.basis.push_back(std::move(v));
  }
  mode.f = mode.basis.front();
  mode.certified = mode.residual <= 1e-8 && mode.kirchhoff <= 1e-8;
  return mode;
}

// ------------------------------------------------------------ sweep

namespace {

struct NewtonOutcome {
  double k;
  int iterations;
  SeedStatus status;
};

NewtonOutcome run_newton(const MetricGraph& g, double k, Boundary boundary, TraceMode mode,
                         const SolverConfig& cfg, double lo, double hi) {
  double prev_raw = 0.0;
  int prev_p = 0;
  double expand = 1.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    NewtonStep st;
    try {
      st = newton_step(g, k, boundary, mode, cfg.probe_count, cfg.rng_seed);
    } catch (const SingularError&) {
      return {k, it, SeedStatus::Singular};
    } catch (const PoleError&) {
      return {k, it, SeedStatus::Pole};
    }
    const double raw = st.k_next - k;
    if (!std::isfinite(raw)) return {k, it, SeedStatus::Escaped};
    double step = raw;
    if (cfg.accelerate && prev_raw != 0.0) {
      // at a p-fold root successive raw steps shrink by 1 - 1/p
      const double ratio = raw / prev_raw;
      int p = 0;
      if (ratio > 0.4 && ratio < 0.97) {
        const double pe = 1.0 / (1.0 - ratio);
        const double pr = std::round(pe);
        if (std::abs(pe - pr) < 0.15 * pr) p = static_cast<int>(pr);
      }
      if (p >= 2 && p == prev_p) step = p * raw;
      prev_p = p;
      // far from any root the steps barely shrink; widen them until they do
      expand = ratio >= 0.97 ? std::min(2.0 * expand, 256.0) : 1.0;
      step *= expand;
    }
    prev_raw = raw;
    const double next = k + step;
    if (std::abs(step) < cfg.newton_tol) return {next, it, SeedStatus::Converged};
    if (!(next > 0.0) || next < lo || next > hi) return {next, it, SeedStatus::Escaped};
    k = next;
  }
  return {k, cfg.max_iter, SeedStatus::MaxIter};
}

/// Negative count just inside an interval end, stepping away from poles.
long count_near(const MetricGraph& g, double& k, double dir, Boundary boundary) {
  double off = 1e-9 * std::max(1.0, k);
  for (int t = 0; t < 8; ++t, off *= 10.0) {
    const double kk = k + dir * off;
    if (!pole_edges(g, kk, boundary, 1e-8).empty()) continue;
    k = kk;
    return negative_count(g, kk, boundary);
  }
  throw Error(ErrorKind::ConvergenceFailure, "cannot evaluate L near k = " + std::to_string(k));
}

void bisect_roots(const MetricGraph& g, Boundary boundary, double lo, long nlo, double hi, long nhi,
                  std::vector<std::pair<double, int>>& out) {
  if (nhi <= nlo) return;
  if (hi - lo < 1e-13 * std::max(1.0, hi)) {
    out.push_back({0.5 * (lo + hi), static_cast<int>(nhi - nlo)});
    return;
  }
  double mid = 0.5 * (lo + hi);
  if (!pole_edges(g, mid, boundary).empty()) mid = lo + 0.49 * (hi - lo);
  long nmid;
  try {
    nmid = negative_count(g, mid, boundary);
  } catch (const PoleError&) {
    mid = lo + 0.51 * (hi - lo);
    nmid = negative_count(g, mid, boundary);
  }
  bisect_roots(g, boundary, lo, nlo, mid, nmid, out);
  bisect_roots(g, boundary, mid, nmid, hi, nhi, out);
}

}  // namespace

Spectrum solve_spectrum(const MetricGraph& g, const SolverConfig& cfg, Boundary boundary) {
  cfg.validate();
  Spectrum spec;
  spec.pole_candidates = pole_locations(g, cfg.k_min, cfg.k_max, boundary, false);
  std::size_t n = 0;
  free_rows(g, boundary, &n);
  spec.trace_mode = cfg.resolved_mode(n);
  if (n == 0) throw Error(ErrorKind::NoRootsFound, "secular system is empty; spectrum lives at poles only");

  // seed grid
  const auto count = static_cast<std::size_t>(std::ceil((cfg.k_max - cfg.k_min) * cfg.seed_density)) + 1;
  std::vector<double> seeds;
  for (std::size_t i = 0; i < count; ++i) {
    const double k = cfg.k_min + (cfg.k_max - cfg.k_min) * static_cast<double>(i) / static_cast<double>(count - 1);
    bool near_pole = false;
    for (std::size_t e = 0; e < g.num_edges() && !near_pole; ++e) {
      if (!edge_enters(g, e, boundary)) continue;
      const double step = std::numbers::pi / g.edge(e).length;
      const double nearest = std::round(k / step) * step;
      near_pole = nearest > 0.0 && std::abs(k - nearest) < cfg.pole_exclusion;
    }
    if (!near_pole) seeds.push_back(k);
  }

  const double margin = 0.1 * (cfg.k_max - cfg.k_min);
  spec.diagnostics.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    const auto out = run_newton(g, seeds[i], boundary, spec.trace_mode, cfg, cfg.k_min - margin, cfg.k_max + margin);
    spec.diagnostics[i] = {seeds[i], out.k, out.iterations, out.status};
  });

  std::vector<double> roots;
  for (const auto& d : spec.diagnostics)
    if ((d.status == SeedStatus::Converged || d.status == SeedStatus::Singular) && d.k >= cfg.k_min &&
        d.k <= cfg.k_max && pole_edges(g, d.k, boundary).empty())
      roots.push_back(d.k);
  std::sort(roots.begin(), roots.end());
  std::vector<double> distinct;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j] - roots[j - 1] <= cfg.dedup_tol) ++j;
    distinct.push_back(roots[i + (j - i) / 2]);
    i = j;
  }

  std::vector<EigenMode> modes(distinct.size());
  parallel_for(distinct.size(), [&](std::size_t i) { modes[i] = extract_mode(g, distinct[i], boundary, cfg); });

  if (cfg.inertia_check) {
    // between consecutive poles the negative count rises by the
    // multiplicity of each root, so a deficit means a missed root
    std::vector<double> cuts{cfg.k_min};
    for (double p : pole_locations(g, cfg.k_min, cfg.k_max, boundary, true))
      if (p - cuts.back() > 1e-9) cuts.push_back(p);
    if (cfg.k_max - cuts.back() > 1e-9) cuts.push_back(cfg.k_max);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      double lo = cuts[c], hi = cuts[c + 1];
      const long nlo = c == 0 && pole_edges(g, lo, boundary, 1e-8).empty() ? negative_count(g, lo, boundary)
                                                                             : count_near(g, lo, +1.0, boundary);
      const long nhi = c + 2 == cuts.size() && pole_edges(g, hi, boundary, 1e-8).empty()
                           ? negative_count(g, hi, boundary)
                           : count_near(g, hi, -1.0, boundary);
      int found = 0;
      for (const auto& m : modes)
        if (m.k > lo && m.k < hi) found += m.multiplicity;
      if (found >= nhi - nlo) continue;
      std::vector<std::pair<double, int>> located;
      bisect_roots(g, boundary, lo, nlo, hi, nhi, located);
      for (const auto& [k, mult] : located) {
        bool known = false;
        for (const auto& m : modes) known = known || std::abs(m.k - k) <= std::max(cfg.dedup_tol, 1e-9 * k);
        if (known) continue;
        // polish the bracketed root with Newton before extracting the mode
        auto out = run_newton(g, k, boundary, spec.trace_mode, cfg, lo, hi);
        const double root = (out.status == SeedStatus::Converged || out.status == SeedStatus::Singular) &&
                                    std::abs(out.k - k) < 1e-6 * std::max(1.0, k)
                                ? out.k
                                : k;
        modes.push_back(extract_mode(g, root, boundary, cfg));
        spec.diagnostics.push_back({k, root, out.iterations, SeedStatus::Inertia});
        ++spec.recovered_by_inertia;
      }
    }
    std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  }

  spec.modes = std::move(modes);
  if (spec.modes.empty())
    throw Error(ErrorKind::NoRootsFound, "no roots of det L(k) in [" + std::to_string(cfg.k_min) + ", " +
                                             std::to_string(cfg.k_max) + "]");
  return spec;
}

}  // namespace metriq
