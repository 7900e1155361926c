#include "metriq/builders.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "metriq/error.hpp"

namespace metriq {

double LatticeSpec::lx() const {
  return boundary == LatticeBoundary::Periodic ? Lx / nx : Lx / (nx - 1);
}
double LatticeSpec::ly() const {
  return boundary == LatticeBoundary::Periodic ? Ly / ny : Ly / (ny - 1);
}

MetricGraph build_lattice(const LatticeSpec& spec) {
  const bool periodic = spec.boundary == LatticeBoundary::Periodic;
  if (spec.nx < 2 || spec.ny < 2) throw Error(ErrorKind::InvalidSpec, "lattice needs nx, ny >= 2");
  if (periodic && (spec.nx < 3 || spec.ny < 3))
    throw Error(ErrorKind::InvalidSpec, "periodic lattice needs nx, ny >= 3");
  if (!(spec.Lx > 0.0) || !(spec.Ly > 0.0))
    throw Error(ErrorKind::InvalidSpec, "lattice extent must be positive");
  const int nx = spec.nx, ny = spec.ny;
  const double lx = spec.lx(), ly = spec.ly();
  auto id = [nx](int i, int j) { return static_cast<std::size_t>(j * nx + i); };

  std::vector<Vertex> verts(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      auto& v = verts[id(i, j)];
      v.id = id(i, j);
      v.pos = {i * lx, j * ly, 0.0};
      // the far side is pinned to the extent so the box is hit exactly
      if (!periodic && i == nx - 1) v.pos.x() = spec.Lx;
      if (!periodic && j == ny - 1) v.pos.y() = spec.Ly;
      v.boundary = spec.boundary == LatticeBoundary::Clamped &&
                   (i == 0 || j == 0 || i == nx - 1 || j == ny - 1);
    }

  std::vector<Edge> edges;
  auto add = [&](int i0, int j0, int i1, int j1, double len) {
    if (periodic) {
      i1 = (i1 + nx) % nx;
      j1 = (j1 + ny) % ny;
    } else if (i1 < 0 || i1 >= nx || j1 < 0 || j1 >= ny) {
      return;
    }
    const auto a = id(i0, j0), b = id(i1, j1);
    if (!periodic) len = (verts[b].pos - verts[a].pos).norm();
    edges.push_back({a, b, len});
  };
  const bool cardinal = spec.connectivity != Connectivity::Ordinal;
  const bool ordinal = spec.connectivity != Connectivity::Cardinal;
  const double diag = std::hypot(lx, ly);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (cardinal) {
        add(i, j, i + 1, j, lx);
        add(i, j, i, j + 1, ly);
      }
      if (ordinal) {
        add(i, j, i + 1, j + 1, diag);
        add(i, j, i - 1, j + 1, diag);
      }
    }

  Domain dom;
  dom.kind = periodic ? DomainKind::Torus : DomainKind::Box;
  dom.lo = {0.0, 0.0};
  dom.hi = {spec.Lx, spec.Ly};
  // diagonal-only lattices split into two sublattices
  return MetricGraph(2, std::move(verts), std::move(edges), dom,
                     spec.connectivity == Connectivity::Ordinal);
}

LatticeSpec square_lattice_spec(int n) {
  LatticeSpec s;
  s.nx = s.ny = n;
  return s;
}

LatticeSpec rect_lattice_spec(int target, int ratio) {
  if (ratio < 1) throw Error(ErrorKind::InvalidSpec, "ratio must be a positive integer");
  // nx - 1 = ratio * (ny - 1); pick ny so nx * ny is closest to target
  int best = 2;
  double best_gap = 1e300;
  for (int ny = 2; ny < 10000; ++ny) {
    const int nx = ratio * (ny - 1) + 1;
    const double gap = std::abs(static_cast<double>(nx) * ny - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = ny;
    }
    if (static_cast<double>(nx) * ny > 2.0 * target) break;
  }
  LatticeSpec s;
  s.ny = best;
  s.nx = ratio * (best - 1) + 1;
  return s;
}

double SpiderSpec::dtheta() const { return 2.0 * std::numbers::pi / M; }

double SpiderSpec::rho(double r) const { return profile ? profile(r) : r / gamma; }

std::vector<double> spider_radii(const SpiderSpec& spec) {
  if (spec.M < 3) throw Error(ErrorKind::InvalidSpec, "spider web needs M >= 3");
  if (spec.rings < 1) throw Error(ErrorKind::DegenerateRings, "spider web needs at least one ring");
  if (!spec.profile && !(spec.gamma > 0.0))
    throw Error(ErrorKind::InvalidSpec, "gamma must be positive");
  const double dth = spec.dtheta();
  const int K = spec.rings;
  std::vector<double> r(K);
  r[K - 1] = 1.0;
  for (int i = K - 2; i >= 0; --i) {
    if (!spec.profile) {
      r[i] = r[i + 1] * std::exp(-dth / spec.gamma);
      continue;
    }
    // RK4 on dr/ds = -rho(r) over one angular step
    const int sub = 64;
    const double h = dth / sub;
    double x = r[i + 1];
    for (int s = 0; s < sub; ++s) {
      const double k1 = -spec.rho(x);
      const double k2 = -spec.rho(x + 0.5 * h * k1);
      const double k3 = -spec.rho(x + 0.5 * h * k2);
      const double k4 = -spec.rho(x + h * k3);
      x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
    }
    r[i] = x;
  }
  for (int i = 0; i < K; ++i) {
    const double prev = i == 0 ? 0.0 : r[i - 1];
    if (!std::isfinite(r[i]) || r[i] - prev < 1e-12)
      throw Error(ErrorKind::DegenerateRings, "ring radii are not strictly increasing from the centre");
  }
  return r;
}

MetricGraph build_spider(const SpiderSpec& spec) {
  const auto radii = spider_radii(spec);
  const int M = spec.M, K = spec.rings;
  const double dth = spec.dtheta();
  std::vector<Vertex> verts(1 + static_cast<std::size_t>(M) * K);
  verts[0].id = 0;
  auto id = [M](int ring, int j) { return static_cast<std::size_t>(1 + (ring - 1) * M + j); };
  for (int i = 1; i <= K; ++i)
    for (int j = 0; j < M; ++j) {
      auto& v = verts[id(i, j)];
      v.id = id(i, j);
      v.pos = {radii[i - 1] * std::cos(j * dth), radii[i - 1] * std::sin(j * dth), 0.0};
      v.boundary = spec.clamped && i == K;
    }
  std::vector<Edge> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    edges.push_back({a, b, (verts[b].pos - verts[a].pos).norm()});
  };
  for (int j = 0; j < M; ++j) add(0, id(1, j));
  for (int i = 1; i <= K; ++i)
    for (int j = 0; j < M; ++j) {
      add(id(i, j), id(i, (j + 1) % M));
      if (i < K) add(id(i, j), id(i + 1, j));
    }
  Domain dom;
  dom.kind = DomainKind::Disc;
  dom.radius = 1.0;
  return MetricGraph(2, std::move(verts), std::move(edges), dom);
}

MetricGraph build_path(int n_edges, double length, bool clamped) {
  if (n_edges < 1 || !(length > 0.0)) throw Error(ErrorKind::InvalidSpec, "bad path parameters");
  std::vector<Vertex> verts(n_edges + 1);
  for (int i = 0; i <= n_edges; ++i) {
    verts[i].id = i;
    verts[i].pos = {i == n_edges ? length : length * i / n_edges, 0.0, 0.0};
    verts[i].boundary = clamped && (i == 0 || i == n_edges);
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n_edges; ++i)
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1),
                     verts[i + 1].pos.x() - verts[i].pos.x()});
  Domain dom;
  dom.kind = DomainKind::Box;
  dom.lo = {0.0, 0.0};
  dom.hi = {length, 1.0};
  return MetricGraph(2, std::move(verts), std::move(edges), dom);
}

// ---------------------------------------------------------------- polyhedra

long PolyhedronMesh::euler_characteristic() const {
  return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(faces.size());
}

namespace {

void finish(PolyhedronMesh& m) {
  // orient every face outward, then collect edges
  for (auto& f : m.faces) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (auto v : f) c += m.vertices[v];
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < f.size(); ++i)
      n += m.vertices[f[i]].cross(m.vertices[f[(i + 1) % f.size()]]);
    if (n.dot(c) < 0) std::reverse(f.begin(), f.end());
  }
  std::set<std::pair<std::size_t, std::size_t>> es;
  for (const auto& f : m.faces)
    for (std::size_t i = 0; i < f.size(); ++i) es.insert(std::minmax(f[i], f[(i + 1) % f.size()]));
  m.edges.assign(es.begin(), es.end());
  if (m.euler_characteristic() != 2)
    throw Error(ErrorKind::InvalidSpec, "mesh lost Euler characteristic 2");
}

/// Faces incident to each vertex, ordered counter-clockwise seen from outside.
std::vector<std::vector<std::size_t>> vertex_rings(const PolyhedronMesh& m) {
  const std::size_t nv = m.vertices.size();
  // for vertex v in face f (ccw ... a v b ...): successor face around v
  // is the one containing the directed edge (v, a).
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> face_of_halfedge;
  for (std::size_t fi = 0; fi < m.faces.size(); ++fi) {
    const auto& f = m.faces[fi];
    for (std::size_t i = 0; i < f.size(); ++i) face_of_halfedge[{f[i], f[(i + 1) % f.size()]}] = fi;
  }
  std::vector<std::vector<std::size_t>> incident(nv);
  for (std::size_t fi = 0; fi < m.faces.size(); ++fi)
    for (auto v : m.faces[fi]) incident[v].push_back(fi);
  std::vector<std::vector<std::size_t>> rings(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t start = incident[v].front();
    std::size_t cur = start;
    do {
      rings[v].push_back(cur);
      const auto& f = m.faces[cur];
      const auto pos = static_cast<std::size_t>(std::find(f.begin(), f.end(), v) - f.begin());
      const std::size_t prev = f[(pos + f.size() - 1) % f.size()];
      cur = face_of_halfedge.at({v, prev});
    } while (cur != start && rings[v].size() <= incident[v].size());
    if (rings[v].size() != incident[v].size())
      throw Error(ErrorKind::InvalidSpec, "mesh is not a closed manifold");
  }
  return rings;
}

}  // namespace

PolyhedronMesh icosahedron_mesh() {
  const double p = std::numbers::phi;
  PolyhedronMesh m;
  for (double a : {-1.0, 1.0})
    for (double b : {-p, p}) {
      m.vertices.push_back(Eigen::Vector3d(0, a, b).normalized());
      m.vertices.push_back(Eigen::Vector3d(a, b, 0).normalized());
      m.vertices.push_back(Eigen::Vector3d(b, 0, a).normalized());
    }
  // adjacent vertices are the closest pairs (chord ~1.0515 vs ~1.7013 next)
  auto adj = [&](std::size_t i, std::size_t j) { return (m.vertices[i] - m.vertices[j]).norm() < 1.2; };
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j)
      for (std::size_t k = j + 1; k < 12; ++k)
        if (adj(i, j) && adj(j, k) && adj(i, k)) m.faces.push_back({i, j, k});
  finish(m);
  return m;
}

PolyhedronMesh truncate_mesh(const PolyhedronMesh& m, bool project) {
  PolyhedronMesh out;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cut;
  auto point = [&](std::size_t a, std::size_t b) {
    auto [it, fresh] = cut.try_emplace({a, b}, out.vertices.size());
    if (fresh) {
      Eigen::Vector3d p = m.vertices[a] + (m.vertices[b] - m.vertices[a]) / 3.0;
      out.vertices.push_back(project ? p.normalized() : p);
    }
    return it->second;
  };
  for (const auto& f : m.faces) {
    std::vector<std::size_t> nf;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto a = f[i], b = f[(i + 1) % f.size()];
      nf.push_back(point(a, b));
      nf.push_back(point(b, a));
    }
    out.faces.push_back(std::move(nf));
  }
  const auto rings = vertex_rings(m);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    std::vector<std::size_t> nf;
    for (auto fi : rings[v]) {
      const auto& f = m.faces[fi];
      const auto pos = static_cast<std::size_t>(std::find(f.begin(), f.end(), v) - f.begin());
      nf.push_back(point(v, f[(pos + 1) % f.size()]));
    }
    out.faces.push_back(std::move(nf));
  }
  finish(out);
  return out;
}

PolyhedronMesh dual_mesh(const PolyhedronMesh& m, bool project) {
  PolyhedronMesh out;
  for (const auto& f : m.faces) {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (auto v : f) c += m.vertices[v];
    c /= static_cast<double>(f.size());
    out.vertices.push_back(project ? c.normalized() : c);
  }
  out.faces = vertex_rings(m);
  finish(out);
  return out;
}

PolyhedronMesh build_polyhedron_mesh(const PolyhedronSpec& spec) {
  auto m = icosahedron_mesh();
  for (char op : spec.ops) {
    if (op == 't')
      m = truncate_mesh(m, spec.project_each_step);
    else if (op == 'd')
      m = dual_mesh(m, spec.project_each_step);
    else
      throw Error(ErrorKind::InvalidSpec, std::string("unknown Conway op '") + op + "'");
  }
  return m;
}

MetricGraph build_polyhedron(const PolyhedronSpec& spec) {
  const auto m = build_polyhedron_mesh(spec);
  std::vector<Vertex> verts(m.vertices.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    verts[i].id = i;
    verts[i].pos = m.vertices[i];
  }
  std::vector<Edge> edges;
  for (auto [a, b] : m.edges) edges.push_back({a, b, (m.vertices[a] - m.vertices[b]).norm()});
  Domain dom;
  dom.kind = DomainKind::Sphere;
  dom.radius = 1.0;
  return MetricGraph(3, std::move(verts), std::move(edges), dom);
}

std::string goldberg_ops(int truncations) {
  if (truncations < 1) throw Error(ErrorKind::InvalidSpec, "need at least one truncation");
  std::string s = "t";
  for (int i = 1; i < truncations; ++i) s += "dt";
  return s;
}

}  // namespace metriq
