#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubecorr/bounds.hpp"
#include "cubecorr/function_table.hpp"

namespace cubecorr {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string witness; // reproduction recipe when failed (spec + seed + values)
    std::optional<double> implied_constant;
    std::map<std::string, double> details;
};

std::string check_result_to_json(const CheckResult& r, int indent = -1);

// Harris/FKG: monotone f,g have Cov >= -1e-12.
CheckResult check_harris(const FunctionTable& f, const FunctionTable& g);

// rho -> <T_rho f, g> nondecreasing on a 21-point grid, polynomial derivative
// nonnegative on the grid, and h'(1) = sum_i <Delta_i f, Delta_i g> (1e-10)
// with every summand >= -1e-12.
CheckResult check_noise_monotone(const FunctionTable& f, const FunctionTable& g);

// SW_2(f,g) / (W1 log(e/W1)) with W1 = sw[1] (spectral normalization).
double lemma_talagrand_constant(const FunctionTable& f, const FunctionTable& g);

// C(d) = (5e/d) (2e/(d-1))^{d-1}
double c_talagrand_d(int d);

// SW_d / (W1 (log(d/W1))^{d-1}); nullopt when d outside [2, log(e/W1)/2].
std::optional<double> lemma_talagrand_d_constant(const FunctionTable& f,
                                                 const FunctionTable& g, int d);

// sum_i fhat({i})^2 / (E|f|^2 log(e/E|f|)); nullopt when E|f| > 1/2.
std::optional<double> chang_constant(const FunctionTable& f);

// sum_{i != k} fhat({i,k})^2 / (I_k^2 log(e/I_k)); requires I_k > 0.
double chang_pair_constant(const FunctionTable& f, int k);

// W_1(1_A) / (E'^2 log(e/E')) with E' = min(mu, 1-mu), W_1 = sum I_i^2.
double first_level_optimality(const FunctionTable& a);

// Cov(A, dual A)/rhs_talagrand plus the exact bound Cov <= min(mu, 1-mu).
CheckResult check_suf1(const FunctionTable& a);

// Composition identities: Cov(F1,F2) = Cov(f1,f2), E[F] = E[f], and
// I_{(i,j)}(F) = I_i(f) I_j(g_i), all exact; inners must have mean 1/2.
CheckResult check_suf2(const FunctionTable& f1, const FunctionTable& f2,
                       const std::vector<FunctionTable>& inners);

// NS_eps(f)/sqrt(eps) for a balanced +/-1 LTF table.
double peres_ns_ratio(const FunctionTable& f, double eps);

// (|SW_1(f,f) - u((1+E[f])/2)|, tau^{1/6}) for an LTF table.
std::pair<double, double> mors_gap(const FunctionTable& f);

// Cov(f,g)/rhs_talagrand(f,g)
double tightness_ratio(const FunctionTable& f, const FunctionTable& g);

// Cov(A, majority) * sqrt(m) / sqrt(log m) on the common m-cube; even-n inputs
// are lifted by one dummy coordinate so the majority partner is odd.
double cormaj_score(const FunctionTable& a);

// Counterexample trend: ratios rhs/cov for the example pair at each target
// measure, under both the log(1/W) functional (asserted: strictly increasing
// as a shrinks) and the log(e/W) clamped evaluator (reported alongside).
CheckResult counterexample_trend(int which, int n, const std::vector<double>& a_values,
                                 int max_total = kMaxCoordinates);

// Property suite over seeded random monotone pairs: harris + noise-monotone +
// comparison claims, aggregated per (check, n).
std::vector<CheckResult> run_property_suite(uint64_t seed, int n_min, int n_max,
                                            int pairs_per_n);

enum class ScanTarget { Wrong2, Statement33, ChangMax, TightnessMin };
ScanTarget scan_target_from_string(const std::string& name);

struct ScanGenerator {
    std::string kind; // "random_monotone_pairs" | "example32_grid" | "catalog"
    int n = 8;
    int k = 3;
    int max_total = kMaxCoordinates;
    std::vector<double> a_values;
};

ScanGenerator parse_scan_generator(const std::string& json_text);

// Evaluates `budget` generated instances, tracks the extremal target value
// (min for wrong2/statement33/tightness_min, max for chang_max); deterministic
// given seed, ties to the lowest instance index.
CheckResult scan(const ScanGenerator& gen, ScanTarget target, int budget, uint64_t seed);

} // namespace cubecorr
