#pragma once

namespace metriq {

/// J_nu(x) for nu >= 0, x >= 0. Throws ConvergenceFailure on evaluation
/// errors.
double bessel_j(double nu, double x);

/// d/dx J_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x).
double bessel_j_prime(double nu, double x);

/// n-th positive zero of J_nu (n >= 1). Throws BesselZeroNotFound.
double bessel_zero(double nu, int n);

}  // namespace metriq
