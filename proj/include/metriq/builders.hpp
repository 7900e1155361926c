#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metriq/graph.hpp"

namespace metriq {

enum class LatticeBoundary { Clamped, Free, Periodic };
enum class Connectivity { Cardinal, Ordinal, Both };

/// Grid on [0, Lx] x [0, Ly]. Non-periodic: nx points span the side, so
/// lx = Lx / (nx - 1). Periodic: nx points per period, lx = Lx / nx.
struct LatticeSpec {
  int nx = 2;
  int ny = 2;
  double Lx = 1.0;
  double Ly = 1.0;
  LatticeBoundary boundary = LatticeBoundary::Clamped;
  Connectivity connectivity = Connectivity::Cardinal;

  double lx() const;
  double ly() const;
};

MetricGraph build_lattice(const LatticeSpec& spec);

/// Rectangular lattice on the unit square with ly = ratio * lx and roughly
/// `target` vertices. ratio must be a positive integer.
LatticeSpec rect_lattice_spec(int target, int ratio = 2);

/// Square lattice on the unit square with n x n vertices.
LatticeSpec square_lattice_spec(int n);

/// Spider web on the unit disc. Rings are placed by integrating
/// dr/dtheta = rho(r) inward from the outer ring at r = 1, one angular step
/// per ring. rho defaults to r / gamma.
struct SpiderSpec {
  int M = 32;
  double gamma = 1.0;
  int rings = 16;
  std::function<double(double)> profile;
  bool clamped = true;

  double dtheta() const;
  double rho(double r) const;
};

/// Ring radii, innermost first; the last entry is exactly 1.
std::vector<double> spider_radii(const SpiderSpec& spec);

/// Vertex 0 is the centre; ring i (1-based) vertex j has id 1 + (i-1)*M + j.
MetricGraph build_spider(const SpiderSpec& spec);

/// Path of n_edges equal edges on [0, length] along the x axis.
MetricGraph build_path(int n_edges, double length = 1.0, bool clamped = true);

struct PolyhedronMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::vector<std::size_t>> faces;  // counter-clockwise seen from outside
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  long euler_characteristic() const;
};

/// ops is a string over {t, d} applied left to right to the icosahedron,
/// e.g. "t" is the soccer ball and "tdt" the 180-vertex Goldberg polyhedron.
struct PolyhedronSpec {
  std::string ops;
  bool project_each_step = true;
};

PolyhedronMesh icosahedron_mesh();
PolyhedronMesh truncate_mesh(const PolyhedronMesh& m, bool project = true);
PolyhedronMesh dual_mesh(const PolyhedronMesh& m, bool project = true);
PolyhedronMesh build_polyhedron_mesh(const PolyhedronSpec& spec);
MetricGraph build_polyhedron(const PolyhedronSpec& spec);

/// Goldberg ops string with the given number of truncations: 1 -> "t",
/// 2 -> "tdt", 3 -> "tdtdt".
std::string goldberg_ops(int truncations);

}  // namespace metriq
