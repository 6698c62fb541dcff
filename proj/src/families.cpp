#include "cubecorr/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "cubecorr/rng.hpp"

namespace cubecorr {

namespace {

// C(n, 0..n) as exact doubles (integers < 2^53 for n <= 24)
std::vector<double> binomial_row(int n) {
    std::vector<double> row(n + 1, 0.0);
    row[0] = 1.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] += row[j - 1];
    return row;
}

// mu({x : sum x_i > t}) = 2^{-n} sum_{w > t} C(n, w), exact
double ball_measure(int n, int t) {
    const auto row = binomial_row(n);
    double acc = 0.0;
    for (int w = t + 1; w <= n; ++w) acc += row[w];
    return acc / std::ldexp(1.0, n);
}

} // namespace

FunctionTable hamming_ball(int n, int t) {
    check_coordinate_count(n);
    if (t < 0 || t > n) throw std::invalid_argument("ball threshold outside [0, n]");
    std::vector<double> values(size_t{1} << n);
    for (size_t m = 0; m < values.size(); ++m)
        values[m] = (std::popcount(m) > t) ? 1.0 : 0.0;
    return {n, ValueKind::Indicator01, std::move(values)};
}

BallPick hamming_ball_mu(int n, double a) {
    check_coordinate_count(n);
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("target measure outside (0, 1)");
    int best_t = 0;
    double best_mu = 0.0, best_dist = 2.0;
    for (int t = 0; t <= n; ++t) {
        const double mu = ball_measure(n, t);
        const double dist = std::fabs(mu - a);
        if (dist < best_dist) { // ties keep the earlier (smaller) t
            best_dist = dist;
            best_t = t;
            best_mu = mu;
        }
    }
    return {hamming_ball(n, best_t), best_t, best_mu};
}

FunctionTable tribes(int n, int r) {
    check_coordinate_count(n);
    if (r < 1 || n % r != 0) throw std::invalid_argument("tribe width must divide n");
    std::vector<double> values(size_t{1} << n);
    for (size_t m = 0; m < values.size(); ++m) {
        bool any = false;
        for (int j = 0; j < n / r && !any; ++j) {
            const size_t block = (size_t{1} << r) - 1;
            any = ((m >> (j * r)) & block) == block;
        }
        values[m] = any ? 1.0 : 0.0;
    }
    return {n, ValueKind::Indicator01, std::move(values)};
}

int suggest_tribe_width(int n) {
    check_coordinate_count(n);
    const double lg = std::log2(static_cast<double>(n));
    const double w = (lg > 0.0 && std::log2(lg) > 0.0) ? lg - std::log2(lg) : 1.0;
    int best = 1;
    double best_dist = std::fabs(1.0 - w);
    for (int d = 2; d <= n; ++d) {
        if (n % d != 0) continue;
        const double dist = std::fabs(static_cast<double>(d) - w);
        if (dist < best_dist) {
            best = d;
            best_dist = dist;
        }
    }
    return best;
}

FunctionTable majority(int n) {
    if (n % 2 == 0) throw std::invalid_argument("majority needs odd n");
    return hamming_ball(n, n / 2);
}

FunctionTable dictator(int n, int i) {
    check_coordinate_count(n);
    if (i < 1 || i > n) throw std::invalid_argument("dictator coordinate outside [1, n]");
    std::vector<double> values(size_t{1} << n);
    for (size_t m = 0; m < values.size(); ++m) values[m] = (m >> (i - 1)) & 1 ? 1.0 : 0.0;
    return {n, ValueKind::Indicator01, std::move(values)};
}

FunctionTable parity(int n) {
    check_coordinate_count(n);
    std::vector<double> values(size_t{1} << n);
    for (size_t m = 0; m < values.size(); ++m) values[m] = std::popcount(m) & 1 ? 1.0 : 0.0;
    return {n, ValueKind::Indicator01, std::move(values)};
}

FunctionTable ltf(const std::vector<double>& weights, double theta) {
    const int n = static_cast<int>(weights.size());
    check_coordinate_count(n);
    for (double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("ltf weights must be nonnegative");
    std::vector<double> values(size_t{1} << n);
    for (size_t m = 0; m < values.size(); ++m) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            if ((m >> i) & 1) acc += weights[i];
        values[m] = (acc >= theta) ? 1.0 : -1.0; // sign(0) = +1
    }
    return {n, ValueKind::SignedPm1, std::move(values)};
}

FunctionTable compose(const FunctionTable& outer, const std::vector<FunctionTable>& inners) {
    if (static_cast<int>(inners.size()) != outer.n)
        throw std::invalid_argument("compose needs one inner per outer coordinate");
    int total = 0;
    for (const auto& g : inners) {
        if (g.kind != ValueKind::Indicator01)
            throw std::invalid_argument("compose inners must be indicator01 tables");
        total += g.n;
    }
    if (total > kMaxCoordinates)
        throw std::invalid_argument("composed table would exceed " +
                                    std::to_string(kMaxCoordinates) + " coordinates");
    std::vector<double> values(size_t{1} << total);
    for (size_t gm = 0; gm < values.size(); ++gm) {
        size_t om = 0;
        int off = 0;
        for (size_t i = 0; i < inners.size(); ++i) {
            const size_t block = (gm >> off) & ((size_t{1} << inners[i].n) - 1);
            if (inners[i].values[block] == 1.0) om |= size_t{1} << i;
            off += inners[i].n;
        }
        values[gm] = outer.values[om];
    }
    return {total, outer.kind, std::move(values)};
}

FunctionTable random_monotone(int n, uint64_t seed, int k) {
    check_coordinate_count(n);
    if (k < 1) throw std::invalid_argument("random_monotone needs k >= 1");
    SplitMix64 rng(seed);
    std::vector<double> values(size_t{1} << n, 0.0);
    for (int j = 0; j < k; ++j) {
        const size_t point = rng.next() & (values.size() - 1);
        for (size_t m = 0; m < values.size(); ++m)
            if ((m & point) == point) values[m] = 1.0;
    }
    return {n, ValueKind::Indicator01, std::move(values)};
}

PairResult example31(int n, double a) {
    if (n + 1 > kMaxCoordinates) throw std::invalid_argument("example31 needs n+1 coordinates");
    const BallPick base = hamming_ball_mu(n, a);
    const BallPick bprime = hamming_ball_mu(n + 1, 1.0 - a);

    const size_t low = (size_t{1} << n) - 1;
    std::vector<double> values(size_t{1} << (n + 1));
    for (size_t m = 0; m < values.size(); ++m)
        values[m] = ((m >> n) & 1) ? 1.0 : base.table.values[m & low];
    FunctionTable aprime{n + 1, ValueKind::Indicator01, std::move(values)};

    PairResult out{std::move(aprime), bprime.table, {}};
    out.notes["t_a"] = base.t;
    out.notes["mu_a"] = base.mu;
    out.notes["t_b"] = bprime.t;
    out.notes["mu_b"] = bprime.mu;
    return out;
}

PairResult example32(int n, double a, int max_total) {
    if (max_total > kMaxCoordinates) max_total = kMaxCoordinates;
    if (n + 1 > max_total) throw std::invalid_argument("example32 needs room for ell >= 1");
    const BallPick base_a = hamming_ball_mu(n, a);
    const BallPick base_b = hamming_ball_mu(n, 1.0 - a);
    const double target_inf = influence(base_b.table, 1);

    int best_ell = 1;
    BallPick best_c = hamming_ball_mu(1, 0.5);
    double best_gap = std::fabs(influence(best_c.table, 1) - target_inf);
    for (int ell = 2; ell <= max_total - n; ++ell) {
        BallPick c = hamming_ball_mu(ell, 0.5);
        const double gap = std::fabs(influence(c.table, 1) - target_inf);
        if (gap < best_gap) {
            best_gap = gap;
            best_ell = ell;
            best_c = std::move(c);
        }
    }

    const int total = n + best_ell;
    const size_t low = (size_t{1} << n) - 1;
    std::vector<double> va(size_t{1} << total), vb(size_t{1} << total);
    for (size_t m = 0; m < va.size(); ++m) {
        const size_t x = m & low, y = m >> n;
        va[m] = ((y & 1) != 0 || base_a.table.values[x] == 1.0) ? 1.0 : 0.0;
        vb[m] = (base_b.table.values[x] == 1.0 && best_c.table.values[y] == 1.0) ? 1.0 : 0.0;
    }

    PairResult out{{total, ValueKind::Indicator01, std::move(va)},
                   {total, ValueKind::Indicator01, std::move(vb)},
                   {}};
    out.notes["t_a"] = base_a.t;
    out.notes["mu_a"] = base_a.mu;
    out.notes["t_b"] = base_b.t;
    out.notes["mu_b"] = base_b.mu;
    out.notes["ell"] = best_ell;
    out.notes["t_c"] = best_c.t;
    out.notes["mu_c"] = best_c.mu;
    out.notes["influence_gap"] = best_gap;
    return out;
}

PairResult example54(int n, double a) {
    check_coordinate_count(n);
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("target measure outside (0, 1)");
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    const std::vector<double> weights(n, w);

    // f1's family is the ball of measure ~ 1-a: popcount >= t1+1
    const BallPick pick = hamming_ball_mu(n, 1.0 - a);
    const double theta1 = w * (pick.t + 1);
    // f2 is centered: popcount >= n/2 (exactly balanced for odd n)
    const double theta2 = 0.5 * std::sqrt(static_cast<double>(n));

    PairResult out{ltf(weights, theta1), ltf(weights, theta2), {}};
    out.notes["t1"] = pick.t;
    out.notes["mu1"] = pick.mu;
    out.notes["mu2"] = 0.5 * (1.0 + mean(out.g));
    out.notes["theta1"] = theta1;
    out.notes["theta2"] = theta2;
    return out;
}

namespace {

using nlohmann::json;

FamilySpec spec_from_json(const json& j);

json spec_to_json(const FamilySpec& s) {
    json j;
    j["kind"] = s.kind;
    if (s.kind == "hamming_ball") {
        j["n"] = s.n;
        if (s.t >= 0)
            j["t"] = s.t;
        else
            j["a"] = s.a;
    } else if (s.kind == "tribes") {
        j["n"] = s.n;
        j["r"] = s.r;
    } else if (s.kind == "majority" || s.kind == "parity") {
        j["n"] = s.n;
    } else if (s.kind == "dictator") {
        j["n"] = s.n;
        j["i"] = s.i;
    } else if (s.kind == "ltf") {
        j["weights"] = s.weights;
        j["theta"] = s.theta;
    } else if (s.kind == "random_monotone") {
        j["n"] = s.n;
        j["seed"] = s.seed;
        j["k"] = s.k;
    } else if (s.kind == "dual_of") {
        j["of"] = spec_to_json(s.inners.at(0));
    } else if (s.kind == "compose") {
        j["outer"] = spec_to_json(s.inners.at(0));
        json arr = json::array();
        for (size_t i = 1; i < s.inners.size(); ++i) arr.push_back(spec_to_json(s.inners[i]));
        j["inners"] = arr;
    } else { // example31 / example32 / example54
        j["n"] = s.n;
        j["a"] = s.a;
    }
    return j;
}

FamilySpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("family spec must be an object with a \"kind\" field");
    FamilySpec s;
    s.kind = j.at("kind").get<std::string>();
    auto need_n = [&] { s.n = j.at("n").get<int>(); };
    if (s.kind == "hamming_ball") {
        need_n();
        if (j.contains("t"))
            s.t = j.at("t").get<int>();
        else if (j.contains("a"))
            s.a = j.at("a").get<double>();
        else
            throw std::invalid_argument("hamming_ball spec needs \"t\" or \"a\"");
    } else if (s.kind == "tribes") {
        need_n();
        s.r = j.contains("r") ? j.at("r").get<int>() : suggest_tribe_width(s.n);
    } else if (s.kind == "majority" || s.kind == "parity") {
        need_n();
    } else if (s.kind == "dictator") {
        need_n();
        s.i = j.contains("i") ? j.at("i").get<int>() : 1;
    } else if (s.kind == "ltf") {
        s.weights = j.at("weights").get<std::vector<double>>();
        s.theta = j.at("theta").get<double>();
    } else if (s.kind == "random_monotone") {
        need_n();
        s.seed = j.at("seed").get<uint64_t>();
        s.k = j.contains("k") ? j.at("k").get<int>() : 3;
    } else if (s.kind == "dual_of") {
        s.inners.push_back(spec_from_json(j.at("of")));
    } else if (s.kind == "compose") {
        s.inners.push_back(spec_from_json(j.at("outer")));
        for (const auto& item : j.at("inners")) s.inners.push_back(spec_from_json(item));
    } else if (s.kind == "example31" || s.kind == "example32" || s.kind == "example54") {
        need_n();
        s.a = j.at("a").get<double>();
    } else {
        throw std::invalid_argument("unknown family kind: " + s.kind);
    }
    return s;
}

} // namespace

FamilySpec parse_family_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("family spec is not valid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

std::string family_spec_to_json(const FamilySpec& spec) { return spec_to_json(spec).dump(); }

MaterializedFamily materialize(const FamilySpec& spec) {
    MaterializedFamily out;
    if (spec.kind == "hamming_ball") {
        if (spec.t >= 0) {
            out.f = hamming_ball(spec.n, spec.t);
        } else {
            BallPick pick = hamming_ball_mu(spec.n, spec.a);
            out.f = std::move(pick.table);
            out.notes["t"] = pick.t;
            out.notes["mu"] = pick.mu;
        }
    } else if (spec.kind == "tribes") {
        out.f = tribes(spec.n, spec.r);
    } else if (spec.kind == "majority") {
        out.f = majority(spec.n);
    } else if (spec.kind == "parity") {
        out.f = parity(spec.n);
    } else if (spec.kind == "dictator") {
        out.f = dictator(spec.n, spec.i);
    } else if (spec.kind == "ltf") {
        out.f = ltf(spec.weights, spec.theta);
    } else if (spec.kind == "random_monotone") {
        out.f = random_monotone(spec.n, spec.seed, spec.k);
    } else if (spec.kind == "dual_of") {
        MaterializedFamily in = materialize(spec.inners.at(0));
        if (in.is_pair) throw std::invalid_argument("dual_of expects a single-function spec");
        out.f = dual(in.f);
    } else if (spec.kind == "compose") {
        MaterializedFamily outer = materialize(spec.inners.at(0));
        if (outer.is_pair) throw std::invalid_argument("compose outer must be a single function");
        std::vector<FunctionTable> inners;
        for (size_t i = 1; i < spec.inners.size(); ++i) {
            MaterializedFamily in = materialize(spec.inners[i]);
            if (in.is_pair) throw std::invalid_argument("compose inners must be single functions");
            inners.push_back(std::move(in.f));
        }
        out.f = compose(outer.f, inners);
    } else if (spec.kind == "example31" || spec.kind == "example32" || spec.kind == "example54") {
        PairResult pr = spec.kind == "example31"   ? example31(spec.n, spec.a)
                        : spec.kind == "example32" ? example32(spec.n, spec.a)
                                                   : example54(spec.n, spec.a);
        out.is_pair = true;
        out.f = std::move(pr.f);
        out.g = std::move(pr.g);
        out.notes = std::move(pr.notes);
    } else {
        throw std::invalid_argument("unknown family kind: " + spec.kind);
    }
    return out;
}

} // namespace cubecorr
