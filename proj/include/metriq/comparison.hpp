#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metriq/analytic.hpp"
#include "metriq/eigensolver.hpp"
#include "metriq/graph.hpp"

namespace metriq {

/// Analytic mode evaluated along the straight edges of g (sphere graphs:
/// chord points projected radially), scaled to unit graph norm.
EdgeFunction restrict_analytic(const MetricGraph& g, const AnalyticMode& mode, int quad_order = kDefaultQuadOrder);

/// One computed eigenfunction (a basis vector of a computed eigenspace)
/// paired with an analytic mode.
struct ModeMatch {
  double k = 0.0;
  Eigen::VectorXd f;             // vertex values, unit graph norm
  std::size_t analytic = 0;      // index into the analytic list
  std::vector<std::size_t> eigenspace;  // analytic indices sharing k_tilde
  double k_tilde = 0.0;
  double eta = 0.0;
  double chi = -1.0;             // negative until computed
  Eigen::VectorXd alpha;         // <f, restricted analytic>_G over the eigenspace
};

/// Computed eigenfunctions flattened in k order, one per basis vector.
std::vector<std::pair<double, Eigen::VectorXd>> flatten_modes(const Spectrum& s);

/// Greedy nearest-k_tilde assignment of computed modes to analytic
/// eigenspaces, each filled at most to its dimension. Analytic modes
/// whose k agree to relative 1e-10 form one eigenspace. Throws
/// AmbiguousMatch when more computed k lie within dedup_tol of one k_tilde
/// than its dimension.
std::vector<ModeMatch> match_modes(const std::vector<std::pair<double, Eigen::VectorXd>>& computed,
                                   const std::vector<AnalyticMode>& analytic, double dedup_tol = 1e-7);

/// || f - P f ||_G, P the graph-L2 orthogonal projector onto span(space).
/// Also returns the coefficients <f, space_i>_G when alpha is given.
double chi_error(const MetricGraph& g, const EdgeFunction& f, const std::vector<EdgeFunction>& space,
                 Eigen::VectorXd* alpha = nullptr, int quad_order = kDefaultQuadOrder);

/// Fills chi and alpha of every match and, inside degenerate eigenspaces,
/// pairs computed and analytic modes by largest overlap.
void compute_chi(const MetricGraph& g, std::vector<ModeMatch>& matches, const std::vector<AnalyticMode>& analytic,
                 int quad_order = kDefaultQuadOrder);

/// Matches every analytic eigenspace accepted by `wanted` to the computed
/// modes within relative distance `window` of its k_tilde that project
/// most strongly onto it (greedy on ||P f||_G, bijective). Fills chi and
/// alpha and pairs inside degenerate eigenspaces by overlap.
std::vector<ModeMatch> match_by_overlap(const MetricGraph& g,
                                        const std::vector<std::pair<double, Eigen::VectorXd>>& computed,
                                        const std::vector<AnalyticMode>& analytic,
                                        const std::function<bool(const AnalyticMode&)>& wanted, double window = 0.1,
                                        int quad_order = kDefaultQuadOrder);

/// One density point of a family: n for the square lattice, the target
/// vertex count for the rectangle, (M, rings) for the spider, the number
/// of truncations for a Goldberg polyhedron and the edge count for a path.
struct DensityPoint {
  int a = 0;
  int b = 0;
  std::string str() const;
};

/// Parses "20" or "32x17".
DensityPoint parse_density(const std::string& s);

MetricGraph build_family_graph(Family family, const DensityPoint& d, double param = 1.0);

struct ConvergenceRow {
  Family family = Family::Square;
  std::size_t vertices = 0;
  std::size_t alpha_index = 0;
  std::string label;
  double k = 0.0;
  double k_tilde = 0.0;
  double eta = 0.0;
  double chi = 0.0;
  std::optional<double> eta_corrected;  // Goldberg only
  double runtime = 0.0;                 // seconds for the whole density point
};

struct StudyOptions {
  SolverConfig solver;
  /// Spider gamma or path length.
  double param = 1.0;
  /// Highest sphere level for Goldberg families.
  int jmax = 4;
  /// Match by eigenfunction overlap inside this relative k window; off
  /// means nearest-k matching and no chi.
  bool compute_chi = true;
  double window = 0.1;
  bool n_factor = false;
};

/// Default compared set: (m, n) in {1,2,3}^2 on lattices, m in {0,1,2}
/// with the three lowest radial modes on the spider, n <= 3 on a path.
bool in_default_mode_set(const AnalyticMode& m);

/// Rows for one graph of a family. Sphere graphs compare level by level
/// and fill eta_corrected from first-order perturbation theory.
std::vector<ConvergenceRow> compare_graph(const MetricGraph& g, Family family, const StudyOptions& opt);

std::vector<ConvergenceRow> convergence_study(Family family, const std::vector<DensityPoint>& densities,
                                              const StudyOptions& opt);

/// Mean eta over rows sharing a vertex count, in input order.
std::vector<std::pair<std::size_t, double>> mean_eta_by_size(const std::vector<ConvergenceRow>& rows,
                                                             bool corrected = false);

}  // namespace metriq
