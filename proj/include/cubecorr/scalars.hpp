#pragma once

namespace cubecorr {

// Scalar building blocks of the correlation bounds.  All extend continuously
// to 0 at x = 0 and throw std::domain_error outside their domain.

double phi(double x);            // x / log(e/x),        x in [0, 1]
double psi1(double x);           // x / sqrt(log(e/x)),  x in [0, 1]
double psi2(double x);           // x / sqrt(log(e^2/x)), x in [0, 1]
double psi_n(int n, double x);   // x / sqrt(log(e^3/(n x^2))), x in [0, 1/sqrt(n)]

// Inverse standard normal CDF (Acklam rational approximation + one Halley
// refinement step via erfc); absolute error well under 1e-9 on (1e-10, 1-1e-10).
double inverse_normal_cdf(double p);

// u(x) = 2 phi_pdf(Phi^{-1}(x))^2, x in (0,1).
double gaussian_u(double x);

} // namespace cubecorr
