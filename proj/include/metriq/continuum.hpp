#pragma once

#include <Eigen/Dense>
#include <vector>

#include "metriq/graph.hpp"

namespace metriq {

enum class DensityMode { Empirical, DualCell };

/// Continuum-limit data of an embedded graph. R is stored as a 3x3 tensor;
/// for planar graphs only the leading 2x2 block is nonzero.
struct ContinuumField {
  int dim = 2;  // intrinsic dimension (2 for sphere graphs)
  DensityMode mode = DensityMode::Empirical;
  std::vector<Eigen::Matrix3d> R;
  std::vector<double> trR;
  std::vector<double> mu;
  std::vector<double> cell_volume;  // empty in empirical mode
  std::vector<char> interior;
  double r0 = 0.0;
  double mu0 = 0.0;
  double omega_volume = 0.0;
};

/// 2 for planar and sphere graphs, 3 otherwise.
int intrinsic_dim(const MetricGraph& g);

/// R(v) = sum_w |r_vw| rhat (x) rhat.
Eigen::Matrix3d r_tensor(const MetricGraph& g, std::size_t v);

/// (d / deg v) sum_w rhat (x) rhat, the inverse-metric estimate. Ambient
/// coordinates; project with tangent_projector on the sphere.
Eigen::Matrix3d metric_estimate(const MetricGraph& g, std::size_t v);

/// I - xhat xhat^T.
Eigen::Matrix3d tangent_projector(const Eigen::Vector3d& x);

/// Voronoi cell volume of every vertex inside the graph's domain (box,
/// disc, torus or unit sphere). Throws UnboundedCell when a cell is not
/// closed by its neighbours.
std::vector<double> dual_cell_volumes(const MetricGraph& g);

/// DualCell: 1 / cell volume. Empirical: unit weight per vertex, so the
/// weights sum to |V|.
std::vector<double> vertex_density(const MetricGraph& g, DensityMode mode);

struct Homogenized {
  double r0;
  double mu0;
};

/// r0 = (1/|V|) sum_v (sum_w |r_vw|) / deg v, mu0 = |V| / |Omega|.
Homogenized homogenized_constants(const MetricGraph& g);

ContinuumField compute_field(const MetricGraph& g, DensityMode mode = DensityMode::DualCell);

/// Max vertex-to-vertex deviation of R and max deviation of R from
/// (tr R / d) I over interior vertices, in absolute terms and relative to
/// the mean of tr R / d. Sphere graphs compare the eigenvalues of the
/// tangent part of R.
struct HomogeneityReport {
  double homogeneity = 0.0;
  double isotropy = 0.0;
  double homogeneity_rel = 0.0;
  double isotropy_rel = 0.0;
  std::size_t vertices = 0;
};

HomogeneityReport homogeneity_report(const MetricGraph& g, const ContinuumField& field);

}  // namespace metriq
