#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubecorr {

// Soft cap: 2^24 doubles = 128 MiB per table.
inline constexpr int kMaxCoordinates = 24;

enum class ValueKind { Indicator01, SignedPm1, Bounded };

std::string to_string(ValueKind kind);
ValueKind value_kind_from_string(const std::string& name);

// Dense table of a real-valued function on {0,1}^n.  values[m] is the value
// at the point whose coordinate i (1-based) equals bit (i-1) of the mask m.
struct FunctionTable {
    int n = 0;
    ValueKind kind = ValueKind::Bounded;
    std::vector<double> values;

    FunctionTable() = default;
    FunctionTable(int n_, ValueKind kind_, std::vector<double> values_);

    size_t size() const { return values.size(); }
    double operator[](uint32_t mask) const { return values[mask]; }

    // Throws std::invalid_argument if values violate the declared kind.
    void validate() const;
};

// Per-coordinate influences I_k(f) = E_x |f(x) - f(x xor e_k)|.
struct InfluenceProfile {
    std::vector<double> influences; // influences[k-1] = I_k
    double total = 0.0;
    double max_over_min = 0.0; // inf if some I_k = 0 (and another is not)
};

void check_coordinate_count(int n);
void check_same_n(const FunctionTable& f, const FunctionTable& g);

FunctionTable from_family(int n, const std::vector<uint32_t>& members);

double mean(const FunctionTable& f);
double inner(const FunctionTable& f, const FunctionTable& g);
double covariance(const FunctionTable& f, const FunctionTable& g);
double norm2(const FunctionTable& f);

double influence(const FunctionTable& f, int k); // 1 <= k <= n
InfluenceProfile influences(const FunctionTable& f);

// Delta_i f(x) = (f(x with x_i=1) - f(x with x_i=0)) / 2, constant in x_i.
FunctionTable derivative(const FunctionTable& f, int i);

bool is_monotone(const FunctionTable& f);

// dual(f)(x) = 1 - f(~x) for indicators, -f(~x) for +/-1 tables.
FunctionTable dual(const FunctionTable& f);

// Fix coordinate i to `bit`; remaining coordinates keep their order.
FunctionTable restrict_coordinate(const FunctionTable& f, int i, int bit);

FunctionTable to_signed(const FunctionTable& f);    // 0/1 -> -1/+1
FunctionTable to_indicator(const FunctionTable& f); // -1/+1 -> 0/1

bool fully_symmetric(const FunctionTable& f, double tol = 0.0);

// max_i I_i(f) / ||f||_2
double tau_regularity(const FunctionTable& f);

// (min_i, max_i) of I_i(f)/I_i(g); requires every I_i(g) > 0.
std::pair<double, double> similarity_ratio(const FunctionTable& f, const FunctionTable& g);

} // namespace cubecorr
