#include <doctest.h>

#include <cmath>
#include <numeric>

#include "metriq/builders.hpp"
#include "metriq/continuum.hpp"
#include "metriq/error.hpp"
#include "metriq/perturbation.hpp"
#include "support.hpp"

using namespace metriq;
using metriq::testing::kPi;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

MetricGraph periodic(int n, Connectivity c = Connectivity::Cardinal) {
  LatticeSpec s;
  s.nx = s.ny = n;
  s.boundary = LatticeBoundary::Periodic;
  s.connectivity = c;
  return build_lattice(s);
}

}  // namespace

TEST_SUITE("continuum") {

TEST_CASE("R on square and rectangular lattices") {
  const auto g = build_lattice(square_lattice_spec(11));
  const double l = 0.1;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.vertex(v).boundary || g.degree(v) != 4) continue;
    const auto R = r_tensor(g, v);
    CHECK((R.topLeftCorner<2, 2>() - 2 * l * Eigen::Matrix2d::Identity()).norm() < 1e-14);
    CHECK(R.trace() == doctest::Approx(4 * l).epsilon(1e-14));
  }
  const auto rs = rect_lattice_spec(300);
  const auto r = build_lattice(rs);
  for (std::size_t v = 0; v < r.num_vertices(); ++v) {
    if (r.vertex(v).boundary) continue;
    const auto R = r_tensor(r, v);
    CHECK(R(0, 0) == doctest::Approx(2 * rs.lx()).epsilon(1e-13));
    CHECK(R(1, 1) == doctest::Approx(2 * rs.ly()).epsilon(1e-13));
    CHECK(std::abs(R(0, 1)) < 1e-15);
  }
}

TEST_CASE("trace of R is the summed edge length") {
  for (const auto& g : {testing::random_graph(12, 9, 4), build_polyhedron({"t"}), periodic(6, Connectivity::Both)}) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      double s = 0.0;
      for (const auto& n : g.neighbors(v)) s += g.edge(n.edge).length;
      CHECK(r_tensor(g, v).trace() == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("spider R in the polar basis") {
  SpiderSpec s;
  s.M = 24;
  s.rings = 12;
  const auto g = build_spider(s);
  const auto rad = spider_radii(s);
  const double dth = s.dtheta();
  for (int i : {3, 6, 10}) {
    for (int j : {0, 5}) {
      const std::size_t v = 1 + (i - 1) * s.M + j;
      const double r = rad[i - 1];
      const double th = j * dth;
      Eigen::Matrix2d P;
      P << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      const Eigen::Matrix2d Rp = P.transpose() * r_tensor(g, v).topLeftCorner<2, 2>() * P;
      const double drm = r - rad[i - 2], drp = rad[i] - r;
      CHECK(Rp(0, 0) == doctest::Approx(drm + drp + 4 * r * std::pow(std::sin(dth / 2), 3)).epsilon(1e-12));
      CHECK(Rp(1, 1) == doctest::Approx(r * std::pow(std::sin(dth), 2) / std::sin(dth / 2)).epsilon(1e-12));
      CHECK(std::abs(Rp(0, 1)) < 1e-14);
    }
  }
}

TEST_CASE("metric estimate recovers the identity on lattices") {
  for (auto c : {Connectivity::Cardinal, Connectivity::Ordinal, Connectivity::Both}) {
    const auto g = periodic(7, c);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      CHECK((metric_estimate(g, v).topLeftCorner<2, 2>() - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  }
}

TEST_CASE("metric estimate on the soccer ball is near the tangent identity") {
  const auto g = build_polyhedron({"t"});
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto P = tangent_projector(g.vertex(v).pos);
    const Eigen::Matrix3d M = P * metric_estimate(g, v) * P;
    CHECK((M - P).norm() / P.norm() < 0.15);
  }
}

TEST_CASE("dual cells tile the domain") {
  SUBCASE("box") {
    const auto g = build_lattice(square_lattice_spec(9));
    CHECK(sum(dual_cell_volumes(g)) == doctest::Approx(1.0).epsilon(1e-6));
    const auto r = build_lattice(rect_lattice_spec(200));
    CHECK(sum(dual_cell_volumes(r)) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("torus") {
    const auto g = periodic(10);
    const auto A = dual_cell_volumes(g);
    CHECK(sum(A) == doctest::Approx(1.0).epsilon(1e-6));
    for (double a : A) CHECK(a == doctest::Approx(0.01).epsilon(1e-12));
    const auto mu = vertex_density(g, DensityMode::DualCell);
    for (double m : mu) CHECK(m == doctest::Approx(100.0).epsilon(1e-10));
  }
  SUBCASE("disc") {
    SpiderSpec s;
    s.M = 32;
    s.rings = 17;
    CHECK(sum(dual_cell_volumes(build_spider(s))) == doctest::Approx(kPi).epsilon(1e-6));
  }
  SUBCASE("sphere") {
    for (const char* ops : {"", "t", "tdt"})
      CHECK(sum(dual_cell_volumes(build_polyhedron({ops}))) == doctest::Approx(4 * kPi).epsilon(1e-6));
  }
  SUBCASE("no domain") {
    try {
      dual_cell_volumes(testing::random_graph(5, 2, 1));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundedCell);
    }
  }
}

TEST_CASE("spider density follows 1 / (r rho dtheta^2)") {
  SpiderSpec s;
  s.M = 64;
  s.rings = 40;
  const auto g = build_spider(s);
  const auto mu = vertex_density(g, DensityMode::DualCell);
  const auto rad = spider_radii(s);
  const double dth = s.dtheta();
  for (int i : {20, 30}) {
    const double r = rad[i - 1];
    CHECK(mu[1 + (i - 1) * s.M] == doctest::Approx(1.0 / (r * r * dth * dth)).epsilon(0.1));
  }
}

TEST_CASE("homogenized constants") {
  const auto sb = build_polyhedron({"t"});
  const auto h = homogenized_constants(sb);
  CHECK(h.r0 == doctest::Approx(0.403548).epsilon(1e-6));
  CHECK(h.mu0 == doctest::Approx(60.0 / (4 * kPi)).epsilon(1e-14));
  CHECK(h.mu0 == doctest::Approx(4.7746).epsilon(1e-4));

  LatticeSpec s;
  s.nx = s.ny = 11;
  s.boundary = LatticeBoundary::Free;
  const auto g = build_lattice(s);
  const auto hl = homogenized_constants(g);
  CHECK(hl.r0 == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(hl.mu0 == doctest::Approx(121.0).epsilon(1e-12));
}

TEST_CASE("compute_field") {
  const auto g = build_polyhedron({"t"});
  const auto e = compute_field(g, DensityMode::Empirical);
  CHECK(e.dim == 2);
  CHECK(e.cell_volume.empty());
  for (double m : e.mu) CHECK(m == 1.0);
  const auto d = compute_field(g, DensityMode::DualCell);
  CHECK(d.cell_volume.size() == 60);
  for (std::size_t v = 0; v < 60; ++v) CHECK(d.mu[v] * d.cell_volume[v] == doctest::Approx(1.0));
  CHECK(d.omega_volume == doctest::Approx(4 * kPi));
}

TEST_CASE("homogeneity and isotropy") {
  const auto p = periodic(8);
  const auto rp = homogeneity_report(p, compute_field(p));
  CHECK(rp.homogeneity < 1e-14);
  CHECK(rp.isotropy < 1e-14);

  const auto r = build_lattice(rect_lattice_spec(200));
  const auto rr = homogeneity_report(r, compute_field(r));
  CHECK(rr.homogeneity < 1e-14);
  CHECK(rr.isotropy > 1e-3);

  // the soccer ball is vertex transitive; later Goldberg graphs are not,
  // and their anisotropy shrinks without vanishing
  double prev = 1e300;
  for (const char* ops : {"t", "tdt", "tdtdt"}) {
    const auto g = build_polyhedron({ops});
    const auto rep = homogeneity_report(g, compute_field(g, DensityMode::Empirical));
    if (std::string(ops) == "t")
      CHECK(rep.homogeneity < 1e-12);
    else
      CHECK(rep.homogeneity_rel > 1e-2);
    CHECK(rep.isotropy > 1e-2);
    CHECK(rep.isotropy < prev);
    prev = rep.isotropy;
  }
}

}
