#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace metriq {

/// |sin(k l)| below this counts as a pole of L(k).
inline constexpr double kPoleTol = 1e-10;
inline constexpr int kDefaultQuadOrder = 16;

enum class Boundary { Clamped, Free };

/// Ambient region the graph was built in; needed for dual cells and
/// for restricting continuum modes.
enum class DomainKind { None, Box, Disc, Sphere, Torus };

struct Domain {
  DomainKind kind = DomainKind::None;
  Eigen::Vector2d lo = Eigen::Vector2d::Zero();  // Box, Torus
  Eigen::Vector2d hi = Eigen::Vector2d::Ones();
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  // Disc
  double radius = 1.0;                               // Disc, Sphere

  double volume() const;
};

struct Vertex {
  std::size_t id = 0;
  Eigen::Vector3d pos = Eigen::Vector3d::Zero();
  bool boundary = false;
};

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  double length = 0.0;
};

struct Incidence {
  std::size_t neighbor;
  std::size_t edge;
};

/// Immutable embedded metric graph. Positions always live in a 3-vector;
/// for dim == 2 the z component is zero.
class MetricGraph {
 public:
  MetricGraph() = default;

  /// Validates and builds adjacency. Throws Error(InvalidGraph).
  MetricGraph(int dim, std::vector<Vertex> vertices, std::vector<Edge> edges,
              Domain domain = {}, bool allow_disconnected = false);

  int dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Incidence>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  const Domain& domain() const noexcept { return domain_; }
  bool allow_disconnected() const noexcept { return allow_disconnected_; }

  double total_length() const;
  std::size_t num_boundary() const;

  /// Embedded vector from `from` to the other end of edge e
  /// (minimum image on a torus).
  Eigen::Vector3d edge_vector(std::size_t e, std::size_t from) const;

  /// Point at local coordinate x along edge e (chord, not projected).
  Eigen::Vector3d edge_point(std::size_t e, double x) const;

  /// Copy with tail and head swapped on the listed edges.
  MetricGraph with_reversed_edges(const std::vector<std::size_t>& which) const;

 private:
  int dim_ = 2;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  Domain domain_;
  bool allow_disconnected_ = false;
};

/// A root k of det L(k) with the vertex values of its eigenfunctions.
/// `basis` is graph-L2 orthonormal; `f` is basis[0].
struct EigenMode {
  double k = 0.0;
  Eigen::VectorXd f;
  int multiplicity = 1;
  std::vector<Eigen::VectorXd> basis;
  double residual = 0.0;   // max over basis of ||L f||_inf / ||f||_inf
  double kirchhoff = 0.0;  // max over basis of kirchhoff_residual
  bool certified = false;
};

/// Function evaluable at local coordinate x of edge e.
using EdgeFunction = std::function<double(std::size_t, double)>;

/// Closed-form edge solution of f'' = -k^2 f with the given endpoint values.
double edge_eigenfunction(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                          std::size_t e, double x);

/// Derivative of the same along the edge's orientation.
double edge_eigenfunction_derivative(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                                     std::size_t e, double x);

/// Edge-evaluable view of a vertex vector at spectral parameter k.
EdgeFunction mode_function(const MetricGraph& g, double k, Eigen::VectorXd fV);

double graph_inner_product(const MetricGraph& g, const EdgeFunction& f, const EdgeFunction& h,
                           int quad_order = kDefaultQuadOrder);
double graph_norm(const MetricGraph& g, const EdgeFunction& f, int quad_order = kDefaultQuadOrder);

/// Gram matrix of several edge functions in one quadrature pass.
Eigen::MatrixXd graph_gram(const MetricGraph& g, const std::vector<EdgeFunction>& fs,
                           int quad_order = kDefaultQuadOrder);

/// max_v |sum_{e~v} outward derivative| over vertices carrying a
/// Kirchhoff condition (all vertices for Free, non-boundary for Clamped).
double kirchhoff_residual(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                          Boundary boundary = Boundary::Clamped);

}  // namespace metriq
