#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "metriq/builders.hpp"
#include "metriq/graph.hpp"

namespace metriq {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// L(k) and dL/dk over the unconstrained vertices. With a clamped boundary
/// the rows and columns of boundary vertices are dropped.
struct SecularMatrix {
  double k = 0.0;
  Boundary boundary = Boundary::Clamped;
  std::vector<long> row_of_vertex;  // -1 for deleted vertices
  std::vector<std::size_t> vertex_of_row;
  SparseMatrix L;
  SparseMatrix dL;

  long size() const { return L.rows(); }
  /// Scatter a reduced vector back to all vertices (zeros where clamped).
  Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;
  Eigen::VectorXd reduce(const Eigen::VectorXd& full) const;
};

/// Throws PoleError(PoleAt) when |sin(k l_e)| < kPoleTol on an edge that
/// enters the system.
SecularMatrix assemble(const MetricGraph& g, double k, Boundary boundary);

/// Row/column layout of L without evaluating it.
std::vector<long> free_rows(const MetricGraph& g, Boundary boundary, std::size_t* count = nullptr);

/// Edges whose endpoints are not both deleted.
bool edge_enters(const MetricGraph& g, std::size_t e, Boundary boundary);

/// Sorted distinct k = n*pi/l_e in [kmin, kmax]. With `entering_only` the
/// edges outside the system are skipped.
std::vector<double> pole_locations(const MetricGraph& g, double kmin, double kmax,
                                   Boundary boundary, bool entering_only = true);

/// Indices of entering edges with |sin(k l_e)| < tol.
std::vector<std::size_t> pole_edges(const MetricGraph& g, double k, Boundary boundary,
                                    double tol = kPoleTol);

/// Sparse LDL^T of a symmetric matrix with a fill-reducing ordering.
class SymmetricFactor {
 public:
  explicit SymmetricFactor(const SparseMatrix& A);
  ~SymmetricFactor();
  SymmetricFactor(const SymmetricFactor&) = delete;
  SymmetricFactor& operator=(const SymmetricFactor&) = delete;

  bool ok() const noexcept { return ok_; }
  /// Number of negative eigenvalues (Sylvester inertia of D).
  long negative_count() const;
  double min_abs_pivot() const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  /// tr(A^{-1} B) for symmetric B whose pattern lies inside A's, by
  /// selected inversion of the factor.
  double trace_inverse_times(const SparseMatrix& B) const;

 private:
  struct Impl;
  Impl* impl_;
  bool ok_ = false;
};

/// Eigenvalues of D^{-1}(A - D) for the whole graph, ascending.
Eigen::VectorXd equilateral_spectrum(const MetricGraph& g);

/// min over those eigenvalues lambda of |-2 sin^2(k l / 2) - lambda|.
/// Throws NotEquilateral unless all edges share one length (1e-12 relative).
double equilateral_correspondence(const MetricGraph& g, double k);
double equilateral_correspondence(const MetricGraph& g, const Eigen::VectorXd& spectrum, double k);

// ------------------------------------------------------------ spider web

/// Radial system for angular mode m: one row per ring that is not clamped,
/// preceded by a centre row when m == 0 (the centre decouples for m != 0).
Eigen::MatrixXd spider_radial_matrix(const SpiderSpec& spec, int m, double k);

/// Inertia of the radial system via its tridiagonal LDL^T recurrence.
long spider_radial_negative_count(const SpiderSpec& spec, int m, double k);

struct RadialRoot {
  double k;
  int m;
  int multiplicity;  // inertia jump within this m block
};

/// Roots of det of the radial system for one m in [kmin, kmax], by inertia
/// bisection between the poles of the web's edge lengths.
std::vector<RadialRoot> spider_radial_roots(const SpiderSpec& spec, int m, double kmin, double kmax,
                                            double tol = 1e-13);

/// Union over m = 0..M/2 with the full-graph multiplicity of each block
/// (1 for m = 0 and m = M/2, 2 otherwise), sorted by k.
std::vector<RadialRoot> spider_reduced_spectrum(const SpiderSpec& spec, double kmin, double kmax,
                                                double tol = 1e-13);

}  // namespace metriq
