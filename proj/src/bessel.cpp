#include "metriq/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <string>

#include "metriq/error.hpp"

namespace metriq {

double bessel_j(double nu, double x) {
  if (nu < 0.0 || x < 0.0) throw Error(ErrorKind::OutOfRange, "bessel_j needs nu >= 0 and x >= 0");
  try {
    return boost::math::cyl_bessel_j(nu, x);
  } catch (const std::exception& ex) {
    throw Error(ErrorKind::ConvergenceFailure, std::string("J_nu evaluation failed: ") + ex.what());
  }
}

double bessel_j_prime(double nu, double x) {
  if (x == 0.0) return nu == 1.0 ? 0.5 : (nu == 0.0 || nu > 1.0 ? 0.0 : INFINITY);
  return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

double bessel_zero(double nu, int n) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "zero index starts at 1");
  if (nu < 0.0) throw Error(ErrorKind::OutOfRange, "bessel_zero needs nu >= 0");
  double z;
  try {
    z = boost::math::cyl_bessel_j_zero(nu, n);
  } catch (const std::exception& ex) {
    throw Error(ErrorKind::BesselZeroNotFound, std::string("J_nu zero search failed: ") + ex.what());
  }
  if (!std::isfinite(z) || z <= 0.0)
    throw Error(ErrorKind::BesselZeroNotFound, "no zero " + std::to_string(n) + " for nu = " + std::to_string(nu));
  return z;
}

}  // namespace metriq
