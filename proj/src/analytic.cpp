#include "metriq/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metriq/bessel.hpp"
#include "metriq/error.hpp"
#include "metriq/quadrature.hpp"
#include "metriq/spherical_harmonics.hpp"

namespace metriq {

using std::numbers::pi;

std::string to_string(Family f) {
  switch (f) {
    case Family::Square: return "square";
    case Family::Rect: return "rect";
    case Family::Spider: return "spider";
    case Family::Sphere: return "sphere";
    case Family::Path: return "path";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "square") return Family::Square;
  if (s == "rect") return Family::Rect;
  if (s == "spider") return Family::Spider;
  if (s == "sphere" || s == "goldberg") return Family::Sphere;
  if (s == "path") return Family::Path;
  throw Error(ErrorKind::ConfigError, "unknown family '" + s + "'");
}

std::string AnalyticMode::label() const {
  std::string s = "(" + std::to_string(i0) + "," + std::to_string(i1) + ")";
  if (family == Family::Spider && i0 > 0) s += sine ? "s" : "c";
  return s;
}

namespace {

void check_positive(int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::OutOfRange, "mode indices start at 1");
}

AnalyticMode box_mode(Family fam, int m, int n, double k) {
  AnalyticMode a;
  a.family = fam;
  a.i0 = m;
  a.i1 = n;
  a.k = k;
  a.eval = [m, n](const Eigen::Vector3d& p) {
    return 2.0 * std::sin(m * pi * p.x()) * std::sin(n * pi * p.y());
  };
  return a;
}

}  // namespace

AnalyticMode square_mode(int m, int n) {
  check_positive(m, n);
  return box_mode(Family::Square, m, n, pi / std::numbers::sqrt2 * std::sqrt(double(m * m + n * n)));
}

AnalyticMode rect_mode(int m, int n) {
  check_positive(m, n);
  return box_mode(Family::Rect, m, n, pi * std::sqrt((m * m + 2.0 * n * n) / 3.0));
}

double spider_nu(double gamma, int m) { return 0.5 * std::sqrt(4.0 * gamma * m * m + 1.0); }

double spider_radial(double gamma, int m, double k, double r) {
  const double a = std::sqrt(1.0 + gamma) * k;
  if (m == 0) return std::cos(a * r);
  return std::sqrt(r) * bessel_j(spider_nu(gamma, m), a * r);
}

AnalyticMode spider_mode(double gamma, int m, int n, bool sine) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::OutOfRange, "gamma must be positive");
  if (m < 0) throw Error(ErrorKind::OutOfRange, "m must be >= 0");
  if (m == 0 && n < 0) throw Error(ErrorKind::OutOfRange, "m = 0 radial index starts at 0");
  if (m > 0 && n < 1) throw Error(ErrorKind::OutOfRange, "radial index starts at 1");
  AnalyticMode a;
  a.family = Family::Spider;
  a.i0 = m;
  a.i1 = n;
  a.sine = m > 0 && sine;
  const double s = std::sqrt(1.0 + gamma);
  a.k = m == 0 ? (2 * n + 1) * pi / (2.0 * s) : bessel_zero(spider_nu(gamma, m), n) / s;
  // normalize in L2 of the unit disc
  const auto& rule = gauss_legendre(64);
  const double k = a.k;
  const double radial2 = rule.integrate(
      [&](double r) {
        const double f = spider_radial(gamma, m, k, r);
        return f * f * r;
      },
      0.0, 1.0);
  const double angular = m == 0 ? 2.0 * pi : pi;
  const double c = 1.0 / std::sqrt(radial2 * angular);
  const bool sn = a.sine;
  a.eval = [gamma, m, k, c, sn](const Eigen::Vector3d& p) {
    const double r = std::min(1.0, std::hypot(p.x(), p.y()));
    const double th = std::atan2(p.y(), p.x());
    const double ang = m == 0 ? 1.0 : (sn ? std::sin(m * th) : std::cos(m * th));
    return c * spider_radial(gamma, m, k, r) * ang;
  };
  return a;
}

AnalyticMode sphere_mode(int j, int m) {
  if (j < 0 || m < -j || m > j) throw Error(ErrorKind::OutOfRange, "need j >= 0 and |m| <= j");
  AnalyticMode a;
  a.family = Family::Sphere;
  a.i0 = j;
  a.i1 = m;
  a.k = std::sqrt(0.5 * j * (j + 1));
  a.eval = [j, m](const Eigen::Vector3d& p) { return real_spherical_harmonic(j, m, p); };
  return a;
}

AnalyticMode path_mode(int n, double length) {
  if (n < 1 || !(length > 0.0)) throw Error(ErrorKind::OutOfRange, "bad path mode");
  AnalyticMode a;
  a.family = Family::Path;
  a.i0 = n;
  a.k = n * pi / length;
  const double k = a.k, c = std::sqrt(2.0 / length);
  a.eval = [k, c](const Eigen::Vector3d& p) { return c * std::sin(k * p.x()); };
  return a;
}

std::vector<AnalyticMode> analytic_modes(Family family, double kmax, double param) {
  std::vector<AnalyticMode> out;
  switch (family) {
    case Family::Square:
    case Family::Rect: {
      const int top = static_cast<int>(std::ceil(kmax)) + 2;
      for (int m = 1; m <= top; ++m)
        for (int n = 1; n <= top; ++n) {
          auto a = family == Family::Square ? square_mode(m, n) : rect_mode(m, n);
          if (a.k <= kmax) out.push_back(std::move(a));
        }
      break;
    }
    case Family::Spider: {
      const double s = std::sqrt(1.0 + param);
      for (int n = 0; (2 * n + 1) * pi / (2.0 * s) <= kmax; ++n) out.push_back(spider_mode(param, 0, n));
      for (int m = 1;; ++m) {
        // the first zero of J_nu exceeds nu
        if (spider_nu(param, m) / s > kmax) break;
        bool any = false;
        for (int n = 1;; ++n) {
          const double z = bessel_zero(spider_nu(param, m), n) / s;
          if (z > kmax) break;
          any = true;
          out.push_back(spider_mode(param, m, n, false));
          out.push_back(spider_mode(param, m, n, true));
        }
        if (!any) break;  // zeros grow with nu
      }
      break;
    }
    case Family::Sphere:
      for (int j = 0; std::sqrt(0.5 * j * (j + 1)) <= kmax; ++j)
        for (int m = -j; m <= j; ++m) out.push_back(sphere_mode(j, m));
      break;
    case Family::Path:
      for (int n = 1; n * pi / param <= kmax; ++n) out.push_back(path_mode(n, param));
      break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  return out;
}

}  // namespace metriq
