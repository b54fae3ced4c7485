// Independent reference computations used by the test suites. Everything
// here works from 1-D radial quadrature / plain Riemann sums and never
// touches the FFT-based implementation paths it is used to check.
#pragma once

#include <array>
#include <functional>

namespace oracle {

// composite 16-point Gauss-Legendre on [a,b] with `panels` subintervals
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels);

// moments of the mother cutoff profile psi(|xi|):
double chi_mass();      // integral of chi over R^2
double chi_m2();        // integral of xi_1^2 chi
double chi_sq_m2();     // integral of xi_1^2 chi^2

// kernel Phi = F^{-1} chi evaluated radially via the order-0 Hankel
// transform
double phi_radial(double r);
double phi_l1();        // integral of |Phi| over R^2 (radial reduction)
double phi_at_zero();   // chi_mass / (2 pi)^2

// midpoint-rule integral of f over the disk |x - c| <= radius at spacing h
double disk_riemann(const std::function<double(double, double)>& f,
                    std::array<double, 2> c, double radius, double h);

}  // namespace oracle
