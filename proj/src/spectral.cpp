#include "cubecorr/spectral.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace cubecorr {

Spectrum wht_forward(const FunctionTable& f) {
    Spectrum s;
    s.n = f.n;
    s.coeffs = f.values;
    for (size_t len = 1; len < s.coeffs.size(); len <<= 1)
        for (size_t blk = 0; blk < s.coeffs.size(); blk += len << 1)
            for (size_t m = blk; m < blk + len; ++m) {
                const double a = s.coeffs[m], b = s.coeffs[m + len];
                s.coeffs[m] = a + b;
                s.coeffs[m + len] = b - a;
            }
    const double scale = 1.0 / static_cast<double>(s.coeffs.size());
    for (double& c : s.coeffs) c *= scale;
    return s;
}

FunctionTable wht_inverse(const Spectrum& s) {
    std::vector<double> values = s.coeffs;
    for (size_t len = 1; len < values.size(); len <<= 1)
        for (size_t blk = 0; blk < values.size(); blk += len << 1)
            for (size_t m = blk; m < blk + len; ++m) {
                const double a = values[m], b = values[m + len];
                values[m] = a - b;
                values[m + len] = a + b;
            }
    return {s.n, ValueKind::Bounded, std::move(values)};
}

LevelWeights level_weights(const FunctionTable& f, const FunctionTable& g) {
    check_same_n(f, g);
    LevelWeights lw;
    lw.n = f.n;
    lw.sw.assign(f.n + 1, 0.0);
    const Spectrum sf = wht_forward(f);
    const bool self = (&f == &g) || (f.values == g.values);
    const Spectrum sg = self ? sf : wht_forward(g);
    for (size_t m = 0; m < sf.coeffs.size(); ++m)
        lw.sw[std::popcount(m)] += sf.coeffs[m] * sg.coeffs[m];
    for (int k = 1; k <= f.n; ++k) lw.w1_influence += influence(f, k) * influence(g, k);
    return lw;
}

double covariance_from_levels(const LevelWeights& lw) {
    double acc = 0.0;
    for (size_t d = 1; d < lw.sw.size(); ++d) acc += lw.sw[d];
    return acc;
}

double noise_correlation(const LevelWeights& lw, double rho) {
    double acc = 0.0, pow = 1.0;
    for (size_t d = 0; d < lw.sw.size(); ++d) {
        acc += pow * lw.sw[d];
        pow *= rho;
    }
    return acc;
}

double noise_correlation(const FunctionTable& f, const FunctionTable& g, double rho) {
    return noise_correlation(level_weights(f, g), rho);
}

double noise_correlation_derivative(const LevelWeights& lw, double rho) {
    double acc = 0.0, pow = 1.0;
    for (size_t d = 1; d < lw.sw.size(); ++d) {
        acc += static_cast<double>(d) * pow * lw.sw[d];
        pow *= rho;
    }
    return acc;
}

static void check_rho(double rho) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("noise rate rho must lie in [0, 1]");
}

FunctionTable noise(const FunctionTable& f, double rho) {
    check_rho(rho);
    Spectrum s = wht_forward(f);
    std::vector<double> pow(f.n + 1);
    pow[0] = 1.0;
    for (int d = 1; d <= f.n; ++d) pow[d] = pow[d - 1] * rho;
    for (size_t m = 0; m < s.coeffs.size(); ++m) s.coeffs[m] *= pow[std::popcount(m)];
    return wht_inverse(s);
}

FunctionTable noise_direct(const FunctionTable& f, double rho) {
    check_rho(rho);
    std::vector<double> values = f.values;
    const double p = 0.5 * (1.0 + rho), q = 0.5 * (1.0 - rho);
    for (size_t len = 1; len < values.size(); len <<= 1)
        for (size_t blk = 0; blk < values.size(); blk += len << 1)
            for (size_t m = blk; m < blk + len; ++m) {
                const double a = values[m], b = values[m + len];
                values[m] = p * a + q * b;
                values[m + len] = q * a + p * b;
            }
    return {f.n, ValueKind::Bounded, std::move(values)};
}

double noise_stability(const FunctionTable& f, double eps) {
    if (f.kind != ValueKind::SignedPm1)
        throw std::invalid_argument("noise_stability requires a pm1 table");
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("noise rate eps must lie in [0, 1]");
    const Spectrum s = wht_forward(f);
    const double base = 1.0 - 2.0 * eps;
    std::vector<double> pow(f.n + 1);
    pow[0] = 1.0;
    for (int d = 1; d <= f.n; ++d) pow[d] = pow[d - 1] * base;
    double acc = 0.0;
    for (size_t m = 0; m < s.coeffs.size(); ++m)
        acc += pow[std::popcount(m)] * s.coeffs[m] * s.coeffs[m];
    return 0.5 - 0.5 * acc;
}

} // namespace cubecorr
