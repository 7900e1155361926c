#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "metriq/continuum.hpp"
#include "metriq/eigensolver.hpp"
#include "metriq/graph.hpp"

namespace metriq {

/// Edge length of the soccer ball built by truncating the unit icosahedron
/// at one third: sqrt((2/109)(29 - 9 sqrt 5)).
double soccer_ball_edge_length();

/// Adjacency eigenvalue gamma with its multiplicity and the
/// characteristic-polynomial factor it comes from.
struct ExactLevel {
  double gamma = 0.0;
  double k = 0.0;
  int multiplicity = 0;
  std::string factor;
};

/// Every adjacency eigenvalue of the soccer ball mapped to
/// k = arccos(gamma / 3) / l; multiplicities sum to 60. Sorted by k.
std::vector<ExactLevel> soccer_ball_exact_spectrum();

/// All branches k = (2 pi n +- arccos(gamma / 3)) / l inside [kmin, kmax].
/// Poles of L(k) (k l a multiple of pi) are skipped.
std::vector<ExactLevel> soccer_ball_exact_roots(double kmin, double kmax);

/// Degenerate level j of a sphere graph. Eigenvalues follow lambda = -k^2,
/// so lambda0 = -j (j + 1) / d with d = 2 on the unit sphere and the
/// first-order prediction is k = sqrt(-lambda0 - lambda1).
struct PerturbationProblem {
  const MetricGraph* graph = nullptr;
  ContinuumField field;
  int j = 0;
  double lambda0 = 0.0;
  /// Multiply B by the degeneracy 2j + 1.
  bool n_factor = false;
};

PerturbationProblem make_problem(const MetricGraph& g, const ContinuumField& field, int j, bool n_factor = false);

struct ABMatrices {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
};

/// A = (1/|V|) sum_v [grad Y R_t grad Y^T + lambda0 tr(R_t) Y Y^T] with
/// R_t = P R P the tangent part of R(v); B = -(d r0 / |Omega|) int Y Y^T,
/// integrated by a product rule exact for the basis products.
ABMatrices assemble_AB(const PerturbationProblem& p);

struct SplittingResult {
  int j = 0;
  double lambda0 = 0.0;
  Eigen::VectorXd lambda1;  // ascending
  Eigen::MatrixXd U;        // columns are the coefficient vectors
  Eigen::VectorXd k_pred;   // ascending
};

/// Solves A u = lambda1 B u. Throws SingularB.
SplittingResult splittings(const PerturbationProblem& p);

/// Prediction and observation for one level, both sorted ascending.
struct LevelComparison {
  int j = 0;
  double k_tilde = 0.0;
  double lambda0 = 0.0;
  Eigen::VectorXd lambda1;  // ordered to pair with k_pred
  Eigen::VectorXd k_pred;
  Eigen::VectorXd k_obs;
  double eta0 = 0.0;  // mean |k_obs - k_tilde| / k_tilde
  double eta1 = 0.0;  // mean |k_obs - k_pred| / k_pred
};

/// Free spectrum of a sphere graph holding at least (jmax + 1)^2 values
/// once the constant mode at k = 0 is counted.
Spectrum sphere_level_spectrum(const MetricGraph& g, int jmax, const SolverConfig& base);

/// Observed k (with multiplicity) of a free sphere graph, k = 0 first.
/// Returns at least (jmax + 1)^2 values.
std::vector<double> sphere_graph_levels(const MetricGraph& g, int jmax, const SolverConfig& base);

LevelComparison compare_level(const SplittingResult& s, const std::vector<double>& observed);

/// Levels 1..jmax of a Goldberg-type sphere graph.
std::vector<LevelComparison> perturbation_study(const MetricGraph& g, int jmax, const SolverConfig& base,
                                                bool n_factor = false);

}  // namespace metriq
