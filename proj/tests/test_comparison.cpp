#include <doctest.h>

#include <cmath>
#include <random>

#include "metriq/analytic.hpp"
#include "metriq/builders.hpp"
#include "metriq/comparison.hpp"
#include "metriq/eigensolver.hpp"
#include "metriq/error.hpp"
#include "support.hpp"

using namespace metriq;
using metriq::testing::kPi;

namespace {

std::vector<std::pair<double, Eigen::VectorXd>> fake(const std::vector<double>& ks) {
  std::vector<std::pair<double, Eigen::VectorXd>> out;
  for (double k : ks) out.emplace_back(k, Eigen::VectorXd::Zero(1));
  return out;
}

/// Vertex values of a restricted analytic function; on a straight graph
/// these define the closest eigenfunction-type interpolant.
Eigen::VectorXd at_vertices(const MetricGraph& g, const EdgeFunction& f) {
  Eigen::VectorXd v(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    v[g.edge(e).tail] = f(e, 0.0);
    v[g.edge(e).head] = f(e, g.edge(e).length);
  }
  return v;
}

double chi_of(const MetricGraph& g, double kmin, double kmax, int m, int n) {
  SolverConfig cfg;
  cfg.k_min = kmin;
  cfg.k_max = kmax;
  const auto s = solve_spectrum(g, cfg, Boundary::Clamped);
  const auto an = analytic_modes(Family::Square, 6.0);
  const auto mt = match_by_overlap(g, flatten_modes(s), an,
                                   [&](const AnalyticMode& a) { return a.i0 == m && a.i1 == n; });
  REQUIRE(!mt.empty());
  double worst = 0.0;
  for (const auto& x : mt) worst = std::max(worst, x.chi);
  return worst;
}

}  // namespace

TEST_SUITE("comparison") {

TEST_CASE("restricted constant mode") {
  const auto g = build_polyhedron({"t"});
  const auto f = restrict_analytic(g, sphere_mode(0, 0));
  const double c = 1.0 / std::sqrt(g.total_length());
  for (std::size_t e = 0; e < g.num_edges(); e += 7) CHECK(f(e, 0.1) == doctest::Approx(c).epsilon(1e-14));
  CHECK(graph_norm(g, f) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("restricted square mode vanishes on the boundary") {
  const auto g = build_lattice(square_lattice_spec(12));
  const auto f = restrict_analytic(g, square_mode(1, 1));
  const auto v = at_vertices(g, f);
  for (std::size_t i = 0; i < g.num_vertices(); ++i)
    if (g.vertex(i).boundary) CHECK(std::abs(v[i]) < 1e-15);
}

TEST_CASE("restricted Y_10 on the icosahedron is proportional to z") {
  const auto g = build_polyhedron({""});
  const auto v = at_vertices(g, restrict_analytic(g, sphere_mode(1, 0)));
  std::size_t top = 0;
  for (std::size_t i = 0; i < 12; ++i)
    if (std::abs(g.vertex(i).pos.z()) > std::abs(g.vertex(top).pos.z())) top = i;
  const double scale = v[top] / g.vertex(top).pos.z();
  for (std::size_t i = 0; i < 12; ++i) CHECK(v[i] == doctest::Approx(scale * g.vertex(i).pos.z()).epsilon(1e-12));
}

TEST_CASE("matching") {
  const auto an = analytic_modes(Family::Square, 6.5);
  REQUIRE(an.size() == 4);
  std::vector<double> ks;
  for (const auto& a : an) ks.push_back(a.k);
  const auto same = match_modes(fake(ks), an);
  REQUIRE(same.size() == 4);
  for (const auto& m : same) CHECK(m.eta == 0.0);
  CHECK(an[same[0].analytic].label() == "(1,1)");
  CHECK(same[1].eigenspace.size() == 2);
  CHECK(same[1].k_tilde == same[2].k_tilde);
  CHECK(an[same[3].analytic].label() == "(2,2)");

  const auto near = match_modes(fake({3.1, 4.9, 5.0, 6.3}), an);
  CHECK(near[0].eta == doctest::Approx(std::abs(3.1 - kPi) / kPi));
  CHECK(near[3].k == 6.3);

  try {
    match_modes(fake({ks[1], ks[1], ks[1]}), an);
    FAIL("expected AmbiguousMatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AmbiguousMatch);
  }
}

TEST_CASE("chi") {
  const auto g = build_lattice(square_lattice_spec(9));
  const auto a = restrict_analytic(g, square_mode(1, 1));
  const auto b = restrict_analytic(g, square_mode(1, 2));
  const auto c = restrict_analytic(g, square_mode(2, 1));
  SUBCASE("inside the span") {
    const EdgeFunction f = [&](std::size_t e, double x) { return 0.6 * b(e, x) + 0.8 * c(e, x); };
    CHECK(chi_error(g, f, {b, c}) < 1e-8);
    Eigen::VectorXd alpha;
    chi_error(g, b, {b}, &alpha);
    CHECK(alpha[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("orthogonal") {
    // (1,1) and (1,2) are odd/even about y = 1/2 on a symmetric lattice
    CHECK(chi_error(g, a, {b}) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("projection is optimal and bounded") {
    const EdgeFunction f = [&](std::size_t e, double x) { return 0.5 * a(e, x) + 0.3 * b(e, x) + 0.81 * c(e, x); };
    const double nf = graph_norm(g, f);
    const EdgeFunction fu = [&](std::size_t e, double x) { return f(e, x) / nf; };
    const double chi = chi_error(g, fu, {a, b});
    CHECK(chi >= 0.0);
    CHECK(chi <= std::sqrt(2.0));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    for (int i = 0; i < 10; ++i) {
      const double p = N(rng), q = N(rng);
      const EdgeFunction d = [&](std::size_t e, double x) { return fu(e, x) - p * a(e, x) - q * b(e, x); };
      CHECK(chi <= graph_norm(g, d) + 1e-12);
    }
  }
}

TEST_CASE("chi shrinks with density") {
  // (1,1) restricts exactly to the lattice; (1,2) does not
  CHECK(chi_of(build_lattice(square_lattice_spec(20)), 2.8, 3.6, 1, 1) <= 0.05);
  const double small = chi_of(build_lattice(square_lattice_spec(10)), 4.5, 5.5, 1, 2);
  const double mid = chi_of(build_lattice(square_lattice_spec(20)), 4.5, 5.5, 1, 2);
  CHECK(mid <= 0.05);
  CHECK(mid < small);
}

TEST_CASE("eta is scale free") {
  LatticeSpec s = square_lattice_spec(9);
  LatticeSpec t = s;
  t.Lx = t.Ly = 2.0;
  SolverConfig cfg;
  cfg.k_min = 2.5;
  cfg.k_max = 6.5;
  const auto a = solve_spectrum(build_lattice(s), cfg, Boundary::Clamped).expanded();
  cfg.k_min /= 2;
  cfg.k_max /= 2;
  const auto b = solve_spectrum(build_lattice(t), cfg, Boundary::Clamped).expanded();
  REQUIRE(a.size() == b.size());
  const auto an = analytic_modes(Family::Square, 6.5);
  REQUIRE(a.size() == an.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i] == doctest::Approx(a[i] / 2).epsilon(1e-11));
    const double kt = an[i].k;
    CHECK(std::abs(a[i] - kt) / kt == doctest::Approx(std::abs(b[i] - kt / 2) / (kt / 2)).epsilon(1e-8));
  }
}

TEST_CASE("single-edge family is exact at every density") {
  StudyOptions opt;
  const auto rows = convergence_study(Family::Path, {{2, 0}, {3, 0}, {5, 0}}, opt);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(r.eta < 1e-12);
    CHECK(r.chi < 1e-8);
  }
}

TEST_CASE("density strings") {
  CHECK(parse_density("20").a == 20);
  const auto d = parse_density("32x17");
  CHECK(d.a == 32);
  CHECK(d.b == 17);
  CHECK(d.str() == "32x17");
  for (const char* bad : {"", "x3", "3x", "abc", "-4", "4y5"}) CHECK_THROWS_AS(parse_density(bad), Error);
}

TEST_CASE("default mode sets") {
  int sq = 0, sp = 0;
  for (const auto& a : analytic_modes(Family::Square, 10.0)) sq += in_default_mode_set(a);
  CHECK(sq == 9);
  for (const auto& a : analytic_modes(Family::Spider, 9.0, 1.0)) sp += in_default_mode_set(a);
  CHECK(sp == 3 + 2 * 3 * 2);
}

TEST_CASE("mean eta by size") {
  std::vector<ConvergenceRow> rows(4);
  rows[0].vertices = rows[1].vertices = 10;
  rows[2].vertices = rows[3].vertices = 20;
  rows[0].eta = 0.2;
  rows[1].eta = 0.4;
  rows[2].eta = 0.1;
  rows[3].eta = 0.3;
  const auto m = mean_eta_by_size(rows);
  REQUIRE(m.size() == 2);
  CHECK(m[0].first == 10);
  CHECK(m[0].second == doctest::Approx(0.3));
  CHECK(m[1].second == doctest::Approx(0.2));
}

}
