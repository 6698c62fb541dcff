#include "cubecorr/function_table.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace cubecorr {

std::string to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Indicator01: return "indicator01";
        case ValueKind::SignedPm1: return "pm1";
        case ValueKind::Bounded: return "bounded";
    }
    return "bounded";
}

ValueKind value_kind_from_string(const std::string& name) {
    if (name == "indicator01") return ValueKind::Indicator01;
    if (name == "pm1" || name == "signed_pm1") return ValueKind::SignedPm1;
    if (name == "bounded") return ValueKind::Bounded;
    throw std::invalid_argument("unknown value kind: " + name);
}

void check_coordinate_count(int n) {
    if (n < 1 || n > kMaxCoordinates)
        throw std::invalid_argument("coordinate count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(kMaxCoordinates) + "]");
}

void check_same_n(const FunctionTable& f, const FunctionTable& g) {
    if (f.n != g.n)
        throw std::invalid_argument("dimension mismatch: n=" + std::to_string(f.n) +
                                    " vs n=" + std::to_string(g.n));
}

static void check_coordinate_index(const FunctionTable& f, int k) {
    if (k < 1 || k > f.n)
        throw std::invalid_argument("coordinate " + std::to_string(k) +
                                    " outside [1, " + std::to_string(f.n) + "]");
}

FunctionTable::FunctionTable(int n_, ValueKind kind_, std::vector<double> values_)
    : n(n_), kind(kind_), values(std::move(values_)) {
    check_coordinate_count(n);
    if (values.size() != (size_t{1} << n))
        throw std::invalid_argument("table length " + std::to_string(values.size()) +
                                    " != 2^" + std::to_string(n));
}

void FunctionTable::validate() const {
    for (double v : values) {
        bool ok = true;
        switch (kind) {
            case ValueKind::Indicator01: ok = (v == 0.0 || v == 1.0); break;
            case ValueKind::SignedPm1: ok = (v == -1.0 || v == 1.0); break;
            case ValueKind::Bounded: ok = (v >= -1.0 && v <= 1.0); break;
        }
        if (!ok)
            throw std::invalid_argument("value " + std::to_string(v) +
                                        " violates kind " + to_string(kind));
    }
}

FunctionTable from_family(int n, const std::vector<uint32_t>& members) {
    check_coordinate_count(n);
    std::vector<double> values(size_t{1} << n, 0.0);
    for (uint32_t m : members) {
        if (m >= values.size())
            throw std::invalid_argument("family member " + std::to_string(m) + " out of range");
        values[m] = 1.0;
    }
    return {n, ValueKind::Indicator01, std::move(values)};
}

double mean(const FunctionTable& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc / static_cast<double>(f.size());
}

double inner(const FunctionTable& f, const FunctionTable& g) {
    check_same_n(f, g);
    double acc = 0.0;
    for (size_t m = 0; m < f.size(); ++m) acc += f.values[m] * g.values[m];
    return acc / static_cast<double>(f.size());
}

double covariance(const FunctionTable& f, const FunctionTable& g) {
    return inner(f, g) - mean(f) * mean(g);
}

double norm2(const FunctionTable& f) { return std::sqrt(inner(f, f)); }

double influence(const FunctionTable& f, int k) {
    check_coordinate_index(f, k);
    const size_t bit = size_t{1} << (k - 1);
    double acc = 0.0;
    for (size_t m = 0; m < f.size(); ++m)
        if (!(m & bit)) acc += std::fabs(f.values[m] - f.values[m | bit]);
    // each unordered edge counted once above, the expectation counts both ends
    return 2.0 * acc / static_cast<double>(f.size());
}

InfluenceProfile influences(const FunctionTable& f) {
    InfluenceProfile p;
    p.influences.resize(f.n);
    for (int k = 1; k <= f.n; ++k) {
        p.influences[k - 1] = influence(f, k);
        p.total += p.influences[k - 1];
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : p.influences) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    p.max_over_min = (hi == 0.0) ? 1.0
                     : (lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo);
    return p;
}

FunctionTable derivative(const FunctionTable& f, int i) {
    check_coordinate_index(f, i);
    const size_t bit = size_t{1} << (i - 1);
    std::vector<double> values(f.size());
    for (size_t m = 0; m < f.size(); ++m) {
        const size_t lo = m & ~bit, hi = m | bit;
        values[m] = 0.5 * (f.values[hi] - f.values[lo]);
    }
    return {f.n, ValueKind::Bounded, std::move(values)};
}

bool is_monotone(const FunctionTable& f) {
    for (int k = 0; k < f.n; ++k) {
        const size_t bit = size_t{1} << k;
        for (size_t m = 0; m < f.size(); ++m)
            if (!(m & bit) && f.values[m] > f.values[m | bit]) return false;
    }
    return true;
}

FunctionTable dual(const FunctionTable& f) {
    if (f.kind == ValueKind::Bounded)
        throw std::invalid_argument("dual requires indicator01 or pm1 kind");
    const size_t full = f.size() - 1;
    std::vector<double> values(f.size());
    for (size_t m = 0; m < f.size(); ++m)
        values[m] = (f.kind == ValueKind::Indicator01) ? 1.0 - f.values[full ^ m]
                                                       : -f.values[full ^ m];
    return {f.n, f.kind, std::move(values)};
}

FunctionTable restrict_coordinate(const FunctionTable& f, int i, int bit) {
    check_coordinate_index(f, i);
    if (bit != 0 && bit != 1) throw std::invalid_argument("restriction bit must be 0 or 1");
    if (f.n < 2) throw std::invalid_argument("cannot restrict a single-coordinate table");
    const size_t low_mask = (size_t{1} << (i - 1)) - 1;
    const size_t fixed = static_cast<size_t>(bit) << (i - 1);
    std::vector<double> values(f.size() / 2);
    for (size_t m = 0; m < values.size(); ++m) {
        const size_t src = (m & low_mask) | ((m & ~low_mask) << 1) | fixed;
        values[m] = f.values[src];
    }
    return {f.n - 1, f.kind, std::move(values)};
}

FunctionTable to_signed(const FunctionTable& f) {
    if (f.kind != ValueKind::Indicator01)
        throw std::invalid_argument("to_signed expects an indicator01 table");
    std::vector<double> values(f.size());
    for (size_t m = 0; m < f.size(); ++m) values[m] = 2.0 * f.values[m] - 1.0;
    return {f.n, ValueKind::SignedPm1, std::move(values)};
}

FunctionTable to_indicator(const FunctionTable& f) {
    if (f.kind != ValueKind::SignedPm1)
        throw std::invalid_argument("to_indicator expects a pm1 table");
    std::vector<double> values(f.size());
    for (size_t m = 0; m < f.size(); ++m) values[m] = 0.5 * (f.values[m] + 1.0);
    return {f.n, ValueKind::Indicator01, std::move(values)};
}

bool fully_symmetric(const FunctionTable& f, double tol) {
    // value depends only on popcount <=> invariant under all of S_n
    std::vector<double> ref(f.n + 1);
    std::vector<bool> seen(f.n + 1, false);
    for (size_t m = 0; m < f.size(); ++m) {
        const int w = std::popcount(m);
        if (!seen[w]) {
            seen[w] = true;
            ref[w] = f.values[m];
        } else if (std::fabs(f.values[m] - ref[w]) > tol) {
            return false;
        }
    }
    return true;
}

double tau_regularity(const FunctionTable& f) {
    const double nrm = norm2(f);
    if (nrm == 0.0) return 0.0;
    double hi = 0.0;
    for (int k = 1; k <= f.n; ++k) hi = std::max(hi, influence(f, k));
    return hi / nrm;
}

std::pair<double, double> similarity_ratio(const FunctionTable& f, const FunctionTable& g) {
    check_same_n(f, g);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int k = 1; k <= f.n; ++k) {
        const double den = influence(g, k);
        if (den == 0.0)
            throw std::invalid_argument("similarity_ratio: I_" + std::to_string(k) +
                                        "(g) = 0 (degenerate input)");
        const double r = influence(f, k) / den;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi};
}

} // namespace cubecorr
