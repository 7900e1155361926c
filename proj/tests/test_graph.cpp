#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "metriq/builders.hpp"
#include "metriq/error.hpp"
#include "metriq/graph.hpp"
#include "metriq/graph_io.hpp"
#include "support.hpp"

using namespace metriq;
using metriq::testing::kPi;

TEST_SUITE("graph") {

TEST_CASE("edge eigenfunction hits the endpoint values") {
  const auto g = testing::random_graph(8, 5, 3);
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(8, -1.0, 2.0);
  const double k = 2.3;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& E = g.edge(e);
    CHECK(edge_eigenfunction(g, k, f, e, 0.0) == doctest::Approx(f[E.tail]).epsilon(1e-14));
    CHECK(edge_eigenfunction(g, k, f, e, E.length) == doctest::Approx(f[E.head]).epsilon(1e-13));
  }
}

TEST_CASE("edge eigenfunction on a unit edge is cos(kx) for f = (1, cos k)") {
  const auto g = testing::single_edge(1.0, false, false);
  const double k = kPi / 3.0;
  Eigen::VectorXd f(2);
  f << 1.0, std::cos(k);
  CHECK(edge_eigenfunction(g, k, f, 0, 0.5) == doctest::Approx(std::cos(kPi / 6.0)).epsilon(1e-14));
  CHECK(edge_eigenfunction(g, k, f, 0, 0.5) == doctest::Approx(0.8660254037844386).epsilon(1e-12));
  // derivative -k sin(kx)
  CHECK(edge_eigenfunction_derivative(g, k, f, 0, 0.3) == doctest::Approx(-k * std::sin(0.3 * k)).epsilon(1e-13));
}

TEST_CASE("edge eigenfunction solves f'' = -k^2 f") {
  const auto g = testing::random_graph(6, 3, 11);
  Eigen::VectorXd f = Eigen::VectorXd::Random(6);
  const double k = 1.7, h = 1e-4;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const double x = 0.4 * g.edge(e).length;
    const double d2 = (edge_eigenfunction(g, k, f, e, x + h) - 2 * edge_eigenfunction(g, k, f, e, x) +
                       edge_eigenfunction(g, k, f, e, x - h)) / (h * h);
    CHECK(d2 == doctest::Approx(-k * k * edge_eigenfunction(g, k, f, e, x)).epsilon(1e-5));
  }
}

TEST_CASE("pole on an edge is reported") {
  const auto g = testing::single_edge(1.0, false, false);
  Eigen::VectorXd f(2);
  f << 1.0, -1.0;
  try {
    edge_eigenfunction(g, kPi, f, 0, 0.5);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.kind() == ErrorKind::PoleOnEdge);
  }
  CHECK_THROWS_AS(edge_eigenfunction(g, 1.0, f, 0, 1.5), Error);
}

TEST_CASE("inner products") {
  const auto g = testing::random_graph(7, 4, 5);
  const EdgeFunction one = [](std::size_t, double) { return 1.0; };
  CHECK(graph_inner_product(g, one, one) == doctest::Approx(g.total_length()).epsilon(1e-14));

  const auto unit = testing::single_edge(1.0, false, false);
  const EdgeFunction s1 = [](std::size_t, double x) { return std::sin(kPi * x); };
  const EdgeFunction s2 = [](std::size_t, double x) { return std::sin(2 * kPi * x); };
  CHECK(std::abs(graph_inner_product(unit, s1, s2, 8)) < 1e-12);
  CHECK(graph_inner_product(unit, s1, s1) == doctest::Approx(0.5).epsilon(1e-13));

  const EdgeFunction zero = [](std::size_t, double) { return 0.0; };
  CHECK(graph_norm(g, zero) == 0.0);
  const auto path4 = build_path(4, 4.0, false);
  CHECK(graph_norm(path4, one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("graph norm converges with quadrature order") {
  const auto g = testing::random_graph(9, 6, 8);
  const EdgeFunction f = [](std::size_t e, double x) { return std::cos(3.0 * x + double(e)) * std::exp(x); };
  for (int q = 10; q <= 20; q += 2) CHECK(std::abs(graph_norm(g, f, q) - graph_norm(g, f, 2 * q)) < 1e-10);
}

TEST_CASE("gram matrix agrees with pairwise inner products") {
  const auto g = testing::random_graph(6, 4, 9);
  std::vector<EdgeFunction> fs;
  for (int i = 0; i < 3; ++i) fs.push_back(mode_function(g, 1.0 + i, Eigen::VectorXd::Random(6)));
  const auto G = graph_gram(g, fs);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(G(i, j) == doctest::Approx(graph_inner_product(g, fs[i], fs[j])).epsilon(1e-13));
}

TEST_CASE("kirchhoff residual") {
  // Neumann interval split at its midpoint: cos(pi x) has zero slope at both ends.
  const auto unit = build_path(2, 1.0, false);
  Eigen::VectorXd f(3);
  f << 1.0, 0.0, -1.0;
  CHECK(kirchhoff_residual(unit, kPi, f, Boundary::Free) < 1e-12);

  const auto g = testing::random_graph(10, 6, 21);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  Eigen::VectorXd r(10);
  for (auto& x : r) x = N(rng);
  CHECK(kirchhoff_residual(g, 2.1, r, Boundary::Free) > 1e-3);
}

TEST_CASE("reversing edges leaves inner products and residuals unchanged") {
  const auto g = testing::random_graph(8, 5, 12);
  const auto r = g.with_reversed_edges({0, 2, 3, 7});
  Eigen::VectorXd f = Eigen::VectorXd::Random(8), h = Eigen::VectorXd::Random(8);
  const double k = 1.3;
  CHECK(graph_inner_product(g, mode_function(g, k, f), mode_function(g, k, h)) ==
        doctest::Approx(graph_inner_product(r, mode_function(r, k, f), mode_function(r, k, h))).epsilon(1e-13));
  CHECK(kirchhoff_residual(g, k, f, Boundary::Free) ==
        doctest::Approx(kirchhoff_residual(r, k, f, Boundary::Free)).epsilon(1e-12));
}

TEST_CASE("graph validation") {
  std::vector<Vertex> v = {{0, {0, 0, 0}, false}, {1, {1, 0, 0}, false}, {2, {2, 0, 0}, false}};
  CHECK_THROWS_AS(MetricGraph(2, v, {{0, 1, 1.0}, {1, 1, 1.0}}), Error);
  CHECK_THROWS_AS(MetricGraph(2, v, {{0, 1, 1.0}, {1, 2, -1.0}}), Error);
  CHECK_THROWS_AS(MetricGraph(2, v, {{0, 1, 1.0}}), Error);  // isolated vertex
  CHECK_THROWS_AS(MetricGraph(2, v, {{0, 1, 1.0}, {0, 1, 1.0}, {1, 2, 1.0}}), Error);
  CHECK_NOTHROW(MetricGraph(2, v, {{0, 1, 1.0}, {1, 2, 1.0}}));
}

TEST_CASE("JSON round trip") {
  LatticeSpec s;
  s.nx = 5;
  s.ny = 4;
  s.boundary = LatticeBoundary::Periodic;
  s.connectivity = Connectivity::Both;
  const auto g = build_lattice(s);
  const auto path = (std::filesystem::temp_directory_path() / "metriq_graph_rt.json").string();
  save_graph(g, path);
  const auto h = load_graph(path);
  std::filesystem::remove(path);
  REQUIRE(h.num_vertices() == g.num_vertices());
  REQUIRE(h.num_edges() == g.num_edges());
  CHECK(h.domain().kind == DomainKind::Torus);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    CHECK(h.edge(e).tail == g.edge(e).tail);
    CHECK(h.edge(e).length == g.edge(e).length);
  }
  CHECK(graph_to_json(h) == graph_to_json(g));
  try {
    load_graph("/nonexistent/metriq.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

}
