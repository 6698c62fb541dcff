#include "cubecorr/scalars.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cubecorr {

namespace {

void check_unit_domain(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(name) + " domain is [0, 1], got " + std::to_string(x));
}

constexpr double kSqrt2Pi = 2.5066282746310005024;

} // namespace

double phi(double x) {
    check_unit_domain(x, "phi");
    if (x == 0.0) return 0.0;
    return x / (1.0 - std::log(x));
}

double psi1(double x) {
    check_unit_domain(x, "psi1");
    if (x == 0.0) return 0.0;
    return x / std::sqrt(1.0 - std::log(x));
}

double psi2(double x) {
    check_unit_domain(x, "psi2");
    if (x == 0.0) return 0.0;
    return x / std::sqrt(2.0 - std::log(x));
}

double psi_n(int n, double x) {
    if (n < 1) throw std::invalid_argument("psi_n needs n >= 1");
    const double upper = 1.0 / std::sqrt(static_cast<double>(n));
    if (!(x >= 0.0 && x <= upper))
        throw std::domain_error("psi_n domain is [0, 1/sqrt(n)], got " + std::to_string(x));
    if (x == 0.0) return 0.0;
    return x / std::sqrt(3.0 - std::log(static_cast<double>(n) * x * x));
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_normal_cdf domain is (0, 1)");
    // Acklam's rational approximation
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425, p_high = 1.0 - p_low;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= p_high) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // one Halley step against the exact CDF via erfc
    const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double gaussian_u(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("gaussian_u domain is (0, 1)");
    const double z = inverse_normal_cdf(x);
    const double pdf = std::exp(-0.5 * z * z) / kSqrt2Pi;
    return 2.0 * pdf * pdf;
}

} // namespace cubecorr
