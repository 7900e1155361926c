#include "metriq/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "metriq/error.hpp"
#include "metriq/quadrature.hpp"

namespace metriq {

double Domain::volume() const {
  switch (kind) {
    case DomainKind::Box:
    case DomainKind::Torus: return (hi - lo).prod();
    case DomainKind::Disc: return std::numbers::pi * radius * radius;
    case DomainKind::Sphere: return 4.0 * std::numbers::pi * radius * radius;
    case DomainKind::None: break;
  }
  throw Error(ErrorKind::InvalidSpec, "graph has no ambient domain");
}

MetricGraph::MetricGraph(int dim, std::vector<Vertex> vertices, std::vector<Edge> edges,
                         Domain domain, bool allow_disconnected)
    : dim_(dim),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      domain_(domain),
      allow_disconnected_(allow_disconnected) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorKind::InvalidGraph, "dim must be 2 or 3");
  const std::size_t n = vertices_.size();
  if (n == 0) throw Error(ErrorKind::InvalidGraph, "graph has no vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices_[i].id != i)
      throw Error(ErrorKind::InvalidGraph, "vertex ids must be contiguous from 0");
    if (dim_ == 2 && vertices_[i].pos.z() != 0.0)
      throw Error(ErrorKind::InvalidGraph, "2D vertex with nonzero z coordinate");
  }
  adjacency_.assign(n, {});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.tail >= n || ed.head >= n)
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " references a missing vertex");
    if (ed.tail == ed.head)
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " is a self-loop");
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has nonpositive length");
    auto key = std::minmax(ed.tail, ed.head);
    if (!seen.insert(key).second)
      throw Error(ErrorKind::InvalidGraph, "parallel edges between " + std::to_string(key.first) +
                                               " and " + std::to_string(key.second));
    adjacency_[ed.tail].push_back({ed.head, e});
    adjacency_[ed.head].push_back({ed.tail, e});
  }
  for (std::size_t v = 0; v < n; ++v)
    if (adjacency_[v].empty())
      throw Error(ErrorKind::InvalidGraph, "vertex " + std::to_string(v) + " is isolated");
  if (!allow_disconnected_) {
    std::vector<char> mark(n, 0);
    std::vector<std::size_t> stack{0};
    mark[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& inc : adjacency_[v])
        if (!mark[inc.neighbor]) {
          mark[inc.neighbor] = 1;
          ++count;
          stack.push_back(inc.neighbor);
        }
    }
    if (count != n) throw Error(ErrorKind::InvalidGraph, "graph is not connected");
  }
}

double MetricGraph::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

std::size_t MetricGraph::num_boundary() const {
  return static_cast<std::size_t>(
      std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.boundary; }));
}

Eigen::Vector3d MetricGraph::edge_vector(std::size_t e, std::size_t from) const {
  const auto& ed = edges_.at(e);
  const std::size_t to = ed.tail == from ? ed.head : ed.tail;
  Eigen::Vector3d r = vertices_[to].pos - vertices_[from].pos;
  if (domain_.kind == DomainKind::Torus) {
    for (int a = 0; a < 2; ++a) {
      const double period = domain_.hi[a] - domain_.lo[a];
      r[a] -= period * std::round(r[a] / period);
    }
  }
  return r;
}

Eigen::Vector3d MetricGraph::edge_point(std::size_t e, double x) const {
  const auto& ed = edges_.at(e);
  return vertices_[ed.tail].pos + (x / ed.length) * edge_vector(e, ed.tail);
}

MetricGraph MetricGraph::with_reversed_edges(const std::vector<std::size_t>& which) const {
  auto edges = edges_;
  for (auto e : which) std::swap(edges.at(e).tail, edges.at(e).head);
  return MetricGraph(dim_, vertices_, std::move(edges), domain_, allow_disconnected_);
}

namespace {

double checked_sin(double k, const Edge& ed, std::size_t e) {
  const double s = std::sin(k * ed.length);
  if (std::abs(s) < kPoleTol) throw PoleError(ErrorKind::PoleOnEdge, k, {e});
  return s;
}

void check_x(const Edge& ed, double x) {
  if (x < 0.0 || x > ed.length)
    throw Error(ErrorKind::OutOfRange, "x = " + std::to_string(x) + " outside [0, " +
                                           std::to_string(ed.length) + "]");
}

}  // namespace

double edge_eigenfunction(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                          std::size_t e, double x) {
  const auto& ed = g.edge(e);
  check_x(ed, x);
  const double ft = fV[ed.tail], fh = fV[ed.head];
  if (x == 0.0) return ft;
  if (x == ed.length) return fh;
  const double s = checked_sin(k, ed, e);
  return (ft * std::sin(k * (ed.length - x)) + fh * std::sin(k * x)) / s;
}

double edge_eigenfunction_derivative(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                                     std::size_t e, double x) {
  const auto& ed = g.edge(e);
  check_x(ed, x);
  const double s = checked_sin(k, ed, e);
  return k * (-fV[ed.tail] * std::cos(k * (ed.length - x)) + fV[ed.head] * std::cos(k * x)) / s;
}

EdgeFunction mode_function(const MetricGraph& g, double k, Eigen::VectorXd fV) {
  return [&g, k, fV = std::move(fV)](std::size_t e, double x) {
    return edge_eigenfunction(g, k, fV, e, x);
  };
}

Eigen::MatrixXd graph_gram(const MetricGraph& g, const std::vector<EdgeFunction>& fs,
                           int quad_order) {
  const auto& rule = gauss_legendre(quad_order);
  const std::size_t m = fs.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd vals(m);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double len = g.edge(e).length;
    const double half = 0.5 * len;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = half * (1.0 + rule.nodes[q]);
      for (std::size_t i = 0; i < m; ++i) vals[i] = fs[i](e, x);
      G.noalias() += (half * rule.weights[q]) * vals * vals.transpose();
    }
  }
  return G;
}

double graph_inner_product(const MetricGraph& g, const EdgeFunction& f, const EdgeFunction& h,
                           int quad_order) {
  const auto& rule = gauss_legendre(quad_order);
  double sum = 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double len = g.edge(e).length;
    sum += rule.integrate([&](double x) { return f(e, x) * h(e, x); }, 0.0, len);
  }
  return sum;
}

double graph_norm(const MetricGraph& g, const EdgeFunction& f, int quad_order) {
  return std::sqrt(std::max(0.0, graph_inner_product(g, f, f, quad_order)));
}

double kirchhoff_residual(const MetricGraph& g, double k, const Eigen::VectorXd& fV,
                          Boundary boundary) {
  double worst = 0.0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (boundary == Boundary::Clamped && g.vertex(v).boundary) continue;
    double sum = 0.0;
    for (const auto& inc : g.neighbors(v)) {
      const auto& ed = g.edge(inc.edge);
      // outward derivative: +f'(0) at the tail, -f'(l) at the head
      if (ed.tail == v)
        sum += edge_eigenfunction_derivative(g, k, fV, inc.edge, 0.0);
      else
        sum -= edge_eigenfunction_derivative(g, k, fV, inc.edge, ed.length);
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

}  // namespace metriq
