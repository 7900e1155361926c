#include <doctest.h>

#include <cmath>

#include "metriq/builders.hpp"
#include "metriq/dispersion.hpp"
#include "metriq/error.hpp"
#include "support.hpp"

using namespace metriq;
using metriq::testing::kPi;

namespace {

DispersionQuery query(Connectivity c, double ell, double kx, double ky) {
  DispersionQuery q;
  q.connectivity = c;
  q.ell = ell;
  q.kx = kx;
  q.ky = ky;
  return q;
}

MetricGraph torus(int n, Connectivity c) {
  LatticeSpec s;
  s.nx = s.ny = n;
  s.boundary = LatticeBoundary::Periodic;
  s.connectivity = c;
  return build_lattice(s);
}

}  // namespace

TEST_SUITE("dispersion") {

TEST_CASE("constant mode") {
  for (auto c : {Connectivity::Cardinal, Connectivity::Ordinal, Connectivity::Both})
    CHECK(dispersion_k(query(c, 0.1, 0.0, 0.0)) == 0.0);
}

TEST_CASE("cardinal closed form") {
  const double k = dispersion_k(query(Connectivity::Cardinal, 0.1, 1.0, 0.0));
  CHECK(k == doctest::Approx(std::acos((std::cos(0.1) + 1.0) / 2.0) / 0.1).epsilon(1e-14));
  CHECK(k == doctest::Approx(0.706959).epsilon(1e-6));
  CHECK(k < 1.0 / std::sqrt(2.0));
}

TEST_CASE("ordinal relation is the spherical Pythagorean identity") {
  for (double kx : {0.5, 3.0, 7.0})
    for (double ky : {0.0, 1.0, 4.0}) {
      const double l = 0.07;
      const double k = dispersion_k(query(Connectivity::Ordinal, l, kx, ky));
      CHECK(std::abs(std::cos(std::sqrt(2.0) * k * l) - std::cos(kx * l) * std::cos(ky * l)) < 1e-14);
    }
}

TEST_CASE("rotation identity links cardinal and ordinal structure") {
  for (double a : {0.1, 0.4, 1.1})
    for (double b : {0.0, 0.3, 0.9})
      CHECK(std::abs((std::cos(a) + std::cos(b)) / 2 - std::cos((a + b) / 2) * std::cos((a - b) / 2)) < 1e-15);
}

TEST_CASE("combined relation residual vanishes") {
  const double l = 0.1, a = 1.3 * l, b = 0.4 * l;
  const double k = dispersion_k(query(Connectivity::Both, l, 1.3, 0.4));
  const double s2 = std::sqrt(2.0);
  const double r = (std::cos(k * l) - (std::cos(a) + std::cos(b)) / 2) / std::sin(k * l) +
                   (std::cos(s2 * k * l) - std::cos(a) * std::cos(b)) / std::sin(s2 * k * l);
  CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("symmetric cardinal case has no defect") {
  for (double l : {0.2, 0.1, 0.05}) {
    const double k = dispersion_k(query(Connectivity::Cardinal, l, 1.0, 1.0));
    CHECK(std::abs(2 * k * k - 2.0) < 1e-12);
  }
}

TEST_CASE("defects shrink like ell^2") {
  for (auto c : {Connectivity::Cardinal, Connectivity::Both}) {
    const auto rows = verify_limit(c, 1.0, 0.0, {0.2, 0.1, 0.05, 0.025});
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].ratio >= 3.5);
      CHECK(rows[i].ratio <= 4.5);
    }
  }
}

TEST_CASE("dispersion grows along a ray") {
  for (auto c : {Connectivity::Cardinal, Connectivity::Ordinal, Connectivity::Both}) {
    double prev = -1.0;
    for (double s = 0.0; s <= 10.0; s += 0.5) {
      const double k = dispersion_k(query(c, 0.1, s, 0.6 * s));
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("spacing must be positive") {
  try {
    dispersion_k(query(Connectivity::Cardinal, 0.0, 1.0, 0.0));
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("plane waves satisfy the secular system on a torus") {
  for (auto c : {Connectivity::Cardinal, Connectivity::Ordinal, Connectivity::Both}) {
    const auto g = torus(16, c);
    for (auto [kx, ky] : {std::pair{2 * kPi, 0.0}, {2 * kPi, 4 * kPi}, {6 * kPi, 2 * kPi}})
      CHECK(cross_check_secular(g, query(c, 1.0 / 16, kx, ky)) <= 1e-9);
  }
  const auto big = torus(64, Connectivity::Cardinal);
  CHECK(cross_check_secular(big, query(Connectivity::Cardinal, 1.0 / 64, 4 * kPi, 2 * kPi)) <= 1e-9);
  CHECK_THROWS_AS(cross_check_secular(build_lattice(square_lattice_spec(5)), query(Connectivity::Cardinal, 0.25, 1, 0)),
                  Error);
}

}
