#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "metriq/graph.hpp"
#include "metriq/secular.hpp"

namespace metriq {

enum class TraceMode { Auto, Exact, Stochastic };

struct SolverConfig {
  double k_min = 0.1;
  double k_max = 10.0;
  /// Seeds per unit k.
  double seed_density = 40.0;
  double newton_tol = 1e-12;
  int max_iter = 100;
  double dedup_tol = 1e-7;
  double nullspace_tol = 1e-8;
  TraceMode trace_mode = TraceMode::Auto;
  std::size_t stochastic_threshold = 2000;
  int probe_count = 64;
  std::uint64_t rng_seed = 1;
  double pole_exclusion = 1e-6;
  int quad_order = kDefaultQuadOrder;
  /// Count roots per pole-free interval by Sylvester inertia and recover
  /// any the Newton sweep missed.
  bool inertia_check = true;
  /// Accelerate Newton at multiple roots by estimating the multiplicity
  /// from successive step ratios.
  bool accelerate = true;

  void validate() const;
  TraceMode resolved_mode(std::size_t system_size) const;
};

struct HutchinsonResult {
  double estimate = 0.0;
  double variance = 0.0;  // sample variance of the per-probe values
  double std_error = 0.0;
  int probes = 0;
};

/// Rademacher probes; probe i draws from mt19937_64 seeded by {rng_seed, i}.
/// `quad(u)` returns u^T X u.
HutchinsonResult hutchinson_trace(long n, const std::function<double(const Eigen::VectorXd&)>& quad,
                                  int probes, std::uint64_t rng_seed);

/// Rademacher vector for probe i.
Eigen::VectorXd rademacher_probe(long n, std::uint64_t rng_seed, std::uint64_t index);

struct NewtonStep {
  double k_next = 0.0;
  double trace = 0.0;      // (estimate of) tr(L^{-1} L')
  double std_error = 0.0;  // zero in exact mode
};

/// k <- k - 1/tr(L(k)^{-1} L'(k)). Throws SingularError if L(k) cannot be
/// factored and PoleError at poles. `mode` must be Exact or Stochastic.
NewtonStep newton_step(const MetricGraph& g, double k, Boundary boundary, TraceMode mode,
                       int probes = 64, std::uint64_t rng_seed = 1);

/// tr(L^{-1} L') via the literal multi right-hand-side solve L X = L'
/// with a dense LU; reference path for small systems.
double jacobi_trace_dense(const SecularMatrix& S);

enum class SeedStatus { Converged, Singular, Escaped, Pole, MaxIter, Inertia };
std::string to_string(SeedStatus s);

struct SeedRecord {
  double seed = 0.0;
  double k = 0.0;
  int iterations = 0;
  SeedStatus status = SeedStatus::MaxIter;
};

struct Spectrum {
  std::vector<EigenMode> modes;
  std::vector<double> pole_candidates;
  std::vector<SeedRecord> diagnostics;
  TraceMode trace_mode = TraceMode::Exact;
  int recovered_by_inertia = 0;

  int total_multiplicity() const;
  /// k values repeated by multiplicity.
  std::vector<double> expanded() const;
};

/// Nullspace of L(k) at a converged root: graph-L2 orthonormal vertex
/// vectors (full length |V|) and their certificates.
EigenMode extract_mode(const MetricGraph& g, double k, Boundary boundary, const SolverConfig& cfg);

/// Negative inertia of L(k).
long negative_count(const MetricGraph& g, double k, Boundary boundary);

Spectrum solve_spectrum(const MetricGraph& g, const SolverConfig& cfg, Boundary boundary);

/// Rescales v to unit graph norm at parameter k.
Eigen::VectorXd normalize_mode(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                               int quad_order = kDefaultQuadOrder);

}  // namespace metriq
