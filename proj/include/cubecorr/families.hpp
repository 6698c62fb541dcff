#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cubecorr/function_table.hpp"

namespace cubecorr {

// Result of a target-measure ball pick: chosen threshold and achieved measure.
struct BallPick {
    FunctionTable table;
    int t = 0;
    double mu = 0.0;
};

// A constructed (f, g) pair plus construction metadata (thresholds, achieved
// measures, influence gaps, ...), keyed by short names.
struct PairResult {
    FunctionTable f;
    FunctionTable g;
    std::map<std::string, double> notes;
};

FunctionTable hamming_ball(int n, int t); // indicator of {x : sum x_i > t}
BallPick hamming_ball_mu(int n, double a);

FunctionTable tribes(int n, int r); // OR of ANDs over consecutive width-r blocks
int suggest_tribe_width(int n);     // round(log2 n - log2 log2 n) clamped to divisors

FunctionTable majority(int n); // odd n
FunctionTable dictator(int n, int i);
FunctionTable parity(int n); // non-monotone, negative-testing only

// sign(sum a_i x_i - theta) as a +/-1 table, sign(0) = +1; weights >= 0.
FunctionTable ltf(const std::vector<double>& weights, double theta);

// f(g_1(x^1), ..., g_n(x^n)); inner i occupies the next m_i mask bits.
FunctionTable compose(const FunctionTable& outer, const std::vector<FunctionTable>& inners);

// Union of k upper shadows of splitmix64-drawn points; always monotone.
FunctionTable random_monotone(int n, uint64_t seed, int k);

// A' = A or (y=1), B' = ball of measure 1-a, both on n+1 coordinates.
PairResult example31(int n, double a);

// A' = A or (y_1=1), B' = B and C with C a balanced ball on ell coordinates,
// ell picked to best match I(C) to I(B); pair lives on n+ell coordinates.
PairResult example32(int n, double a, int max_total = kMaxCoordinates);

// Two LTFs with shared weights 1/sqrt(n): f1 thresholded so mu ~ 1-a, f2 balanced.
PairResult example54(int n, double a);

// Declarative family description, parsed from JSON (CLI --spec).
struct FamilySpec {
    std::string kind;
    int n = 0;
    int t = -1; // ball threshold; -1 means "use target measure a"
    double a = 0.0;
    int r = 0;
    int i = 1;
    int k = 3;
    uint64_t seed = 0;
    double theta = 0.0;
    std::vector<double> weights;
    std::vector<FamilySpec> inners; // compose inners / dual_of payload / compose outer at [0]
};

struct MaterializedFamily {
    bool is_pair = false;
    FunctionTable f;
    FunctionTable g; // valid only when is_pair
    std::map<std::string, double> notes;
};

FamilySpec parse_family_spec(const std::string& json_text);
std::string family_spec_to_json(const FamilySpec& spec);
MaterializedFamily materialize(const FamilySpec& spec);

} // namespace cubecorr
