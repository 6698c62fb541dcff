#pragma once

#include <vector>

#include "cubecorr/function_table.hpp"

namespace cubecorr {

// Walsh coefficients in the monotone-friendly basis v_S(x) = prod_{i in S}(2x_i - 1):
// coeffs[mask(S)] = 2^{-n} sum_x f(x) v_S(x).
struct Spectrum {
    int n = 0;
    std::vector<double> coeffs;
};

// Level correlations SW_d(f,g) = sum_{|S|=d} fhat(S) ghat(S), d = 0..n.
// w1_influence keeps the influence-product form W_1(f,g) = sum_i I_i(f)I_i(g),
// which differs from sw[1] by a factor 4 for monotone pairs (I_i = 2 fhat({i})).
struct LevelWeights {
    int n = 0;
    std::vector<double> sw;
    double w1_influence = 0.0;
};

Spectrum wht_forward(const FunctionTable& f);
FunctionTable wht_inverse(const Spectrum& s);

LevelWeights level_weights(const FunctionTable& f, const FunctionTable& g);

// sum_{d>=1} sw[d] = Cov(f,g)
double covariance_from_levels(const LevelWeights& lw);

// <T_rho f, g> = sum_d rho^d SW_d(f,g)
double noise_correlation(const LevelWeights& lw, double rho);
double noise_correlation(const FunctionTable& f, const FunctionTable& g, double rho);

// d/drho <T_rho f, g> = sum_d d rho^{d-1} SW_d(f,g)
double noise_correlation_derivative(const LevelWeights& lw, double rho);

// T_rho f via the spectrum: scale level-d coefficients by rho^d, invert.
FunctionTable noise(const FunctionTable& f, double rho);

// T_rho f via the direct expectation (per-coordinate averaging butterfly).
// Equal to noise() up to rounding; preserves monotonicity exactly in floating
// point, so monotone-output checks use this route.
FunctionTable noise_direct(const FunctionTable& f, double rho);

// NS_eps(f) = 1/2 - 1/2 sum_S (1-2eps)^{|S|} fhat(S)^2; requires signed_pm1.
double noise_stability(const FunctionTable& f, double eps);

} // namespace cubecorr
