#include "cubecorr/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

#include "cubecorr/scalars.hpp"

namespace cubecorr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRegularityTol = 1e-9;

// Clamp counter for W-quantities and influences fed to log/phi/psi domains.
struct Clamp {
    int events = 0;
    bool mismatch = false;

    // into (0, cap]; exceeding 4*cap flags a conventions mismatch
    double cap_at(double x, double cap) {
        if (x > cap) {
            ++events;
            if (x > 4.0 * cap) mismatch = true;
            return cap;
        }
        return x;
    }
    double unit(double x) { return cap_at(x, 1.0); }
};

struct PairStats {
    int n = 0;
    InfluenceProfile inf_f, inf_g;
    double w1_fg = 0.0, w1_ff = 0.0, w1_gg = 0.0;
};

PairStats pair_stats(const FunctionTable& f, const FunctionTable& g) {
    check_same_n(f, g);
    PairStats s;
    s.n = f.n;
    s.inf_f = influences(f);
    s.inf_g = influences(g);
    for (int i = 0; i < s.n; ++i) {
        s.w1_fg += s.inf_f.influences[i] * s.inf_g.influences[i];
        s.w1_ff += s.inf_f.influences[i] * s.inf_f.influences[i];
        s.w1_gg += s.inf_g.influences[i] * s.inf_g.influences[i];
    }
    return s;
}

double eval_talagrand(const PairStats& s, Clamp& cl) {
    if (s.w1_fg <= 0.0) return 0.0;
    return phi(cl.unit(s.w1_fg));
}

double eval_kms(const PairStats& s, Clamp& cl) {
    double acc = 0.0;
    for (int i = 0; i < s.n; ++i)
        acc += psi1(cl.unit(s.inf_f.influences[i])) * psi1(cl.unit(s.inf_g.influences[i]));
    return acc;
}

double eval_similar(const PairStats& s, Clamp& cl) {
    if (s.w1_fg <= 0.0) return 0.0;
    const double df = 1.0 - std::log(cl.unit(s.w1_ff));
    const double dg = 1.0 - std::log(cl.unit(s.w1_gg));
    return s.w1_fg / (std::sqrt(df) * std::sqrt(dg));
}

double eval_regular(const PairStats& s, Clamp& cl) {
    const double num = s.inf_f.total * s.inf_g.total / static_cast<double>(s.n);
    if (num <= 0.0) return 0.0;
    const double wf = cl.unit(s.inf_f.total * s.inf_f.total / static_cast<double>(s.n));
    const double wg = cl.unit(s.inf_g.total * s.inf_g.total / static_cast<double>(s.n));
    return num / (std::sqrt(1.0 - std::log(wf)) * std::sqrt(1.0 - std::log(wg)));
}

// psi_n slot on sym (the fully symmetric side), psi2 on the other
double eval_asymmetric(const InfluenceProfile& sym, const InfluenceProfile& other, int n,
                       Clamp& cl) {
    const double cap = 1.0 / std::sqrt(static_cast<double>(n));
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += psi_n(n, cl.cap_at(sym.influences[i], cap)) *
               psi2(cl.unit(other.influences[i]));
    return acc;
}

double eval_statement33(const PairStats& s, Clamp& cl) {
    if (s.w1_fg <= 0.0) return 0.0;
    const double prod = cl.unit(s.w1_ff * s.w1_gg);
    if (prod <= 0.0) return 0.0;
    return s.w1_fg / (1.0 - std::log(prod));
}

double family_measure(const FunctionTable& f) {
    const double m = mean(f);
    return f.kind == ValueKind::Indicator01 ? m : 0.5 * (1.0 + m);
}

double ratio_of(double cov, double rhs) { return rhs > 0.0 ? cov / rhs : kInf; }

} // namespace

double rhs_talagrand(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    return eval_talagrand(pair_stats(f, g), cl);
}

double rhs_kms(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    return eval_kms(pair_stats(f, g), cl);
}

double rhs_similar(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    return eval_similar(pair_stats(f, g), cl);
}

double rhs_regular(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    return eval_regular(pair_stats(f, g), cl);
}

double rhs_asymmetric(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    const PairStats s = pair_stats(f, g);
    return eval_asymmetric(s.inf_f, s.inf_g, s.n, cl);
}

double rhs_statement33(const FunctionTable& f, const FunctionTable& g) {
    Clamp cl;
    return eval_statement33(pair_stats(f, g), cl);
}

double rhs_w1(const FunctionTable& f, const FunctionTable& g) {
    return pair_stats(f, g).w1_fg;
}

BoundReport bound_report(const FunctionTable& f, const FunctionTable& g) {
    const PairStats s = pair_stats(f, g);
    BoundReport r;
    r.n = s.n;
    r.kind_f = f.kind;
    r.kind_g = g.kind;
    r.mu_f = mean(f);
    r.mu_g = mean(g);
    r.cov = covariance(f, g);
    r.w1_fg = s.w1_fg;
    r.w1_ff = s.w1_ff;
    r.w1_gg = s.w1_gg;
    r.total_influence_f = s.inf_f.total;
    r.total_influence_g = s.inf_g.total;

    r.monotone_f = is_monotone(f);
    r.monotone_g = is_monotone(g);
    r.fully_symmetric_f = fully_symmetric(f);
    r.fully_symmetric_g = fully_symmetric(g);
    r.is_regular_f = s.inf_f.max_over_min <= 1.0 + kRegularityTol;
    r.is_regular_g = s.inf_g.max_over_min <= 1.0 + kRegularityTol;

    bool degenerate_sim = false;
    double lo = kInf, hi = 0.0;
    for (int i = 0; i < s.n; ++i) {
        if (s.inf_g.influences[i] == 0.0) {
            degenerate_sim = true;
            break;
        }
        const double q = s.inf_f.influences[i] / s.inf_g.influences[i];
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    if (degenerate_sim) {
        r.sim_min = r.sim_max = std::numeric_limits<double>::quiet_NaN();
        r.is_similar = false;
    } else {
        r.sim_min = lo;
        r.sim_max = hi;
        r.is_similar = hi <= lo * (1.0 + kRegularityTol);
    }

    Clamp cl;
    r.rhs_talagrand = eval_talagrand(s, cl);
    r.rhs_kms = eval_kms(s, cl);
    r.rhs_similar = eval_similar(s, cl);
    r.rhs_regular = eval_regular(s, cl);
    r.rhs_statement33 = eval_statement33(s, cl);
    r.rhs_w1 = s.w1_fg;

    const InfluenceProfile* sym = &s.inf_f;
    const InfluenceProfile* other = &s.inf_g;
    double mu_sym = family_measure(f);
    double sum_psi1_other = 0.0;
    if (r.fully_symmetric_f) {
        r.asym_slot = "f";
    } else if (r.fully_symmetric_g) {
        r.asym_slot = "g";
        sym = &s.inf_g;
        other = &s.inf_f;
        mu_sym = family_measure(g);
    } else {
        r.asym_slot = "f(unmet)";
    }
    r.rhs_asymmetric = eval_asymmetric(*sym, *other, s.n, cl);
    for (int i = 0; i < s.n; ++i) sum_psi1_other += psi1(cl.unit(other->influences[i]));
    r.asym_second_form =
        mu_sym * (1.0 - mu_sym) / std::sqrt(static_cast<double>(s.n)) * sum_psi1_other;

    r.clamp_events = cl.events;
    r.conventions_mismatch = cl.mismatch;

    r.ratio_talagrand = ratio_of(r.cov, r.rhs_talagrand);
    r.ratio_kms = ratio_of(r.cov, r.rhs_kms);
    r.ratio_similar = ratio_of(r.cov, r.rhs_similar);
    r.ratio_regular = ratio_of(r.cov, r.rhs_regular);
    r.ratio_asymmetric = ratio_of(r.cov, r.rhs_asymmetric);
    r.ratio_statement33 = ratio_of(r.cov, r.rhs_statement33);
    r.ratio_w1 = ratio_of(r.cov, r.rhs_w1);
    return r;
}

bool check_comparison_claims(const BoundReport& r) {
    const double tol = 1e-12;
    return r.rhs_similar + tol >= r.rhs_talagrand && r.rhs_similar + tol >= 0.5 * r.rhs_kms;
}

bool check_comparison_claims(const FunctionTable& f, const FunctionTable& g) {
    return check_comparison_claims(bound_report(f, g));
}

namespace {

using nlohmann::json;

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string bound_report_to_json(const BoundReport& r, int indent) {
    json j;
    j["n"] = r.n;
    j["kind_f"] = to_string(r.kind_f);
    j["kind_g"] = to_string(r.kind_g);
    j["mu_f"] = r.mu_f;
    j["mu_g"] = r.mu_g;
    j["cov"] = r.cov;
    j["w1_fg"] = r.w1_fg;
    j["w1_ff"] = r.w1_ff;
    j["w1_gg"] = r.w1_gg;
    j["total_influence_f"] = r.total_influence_f;
    j["total_influence_g"] = r.total_influence_g;
    j["rhs"] = {{"talagrand", r.rhs_talagrand},
                {"kms", r.rhs_kms},
                {"similar", r.rhs_similar},
                {"regular", r.rhs_regular},
                {"asymmetric", r.rhs_asymmetric},
                {"statement33", r.rhs_statement33},
                {"w1", r.rhs_w1}};
    j["asym_second_form"] = r.asym_second_form;
    j["ratio"] = {{"talagrand", finite_or_null(r.ratio_talagrand)},
                  {"kms", finite_or_null(r.ratio_kms)},
                  {"similar", finite_or_null(r.ratio_similar)},
                  {"regular", finite_or_null(r.ratio_regular)},
                  {"asymmetric", finite_or_null(r.ratio_asymmetric)},
                  {"statement33", finite_or_null(r.ratio_statement33)},
                  {"w1", finite_or_null(r.ratio_w1)}};
    j["flags"] = {{"monotone_f", r.monotone_f},
                  {"monotone_g", r.monotone_g},
                  {"is_similar", r.is_similar},
                  {"sim_min", finite_or_null(r.sim_min)},
                  {"sim_max", finite_or_null(r.sim_max)},
                  {"is_regular_f", r.is_regular_f},
                  {"is_regular_g", r.is_regular_g},
                  {"fully_symmetric_f", r.fully_symmetric_f},
                  {"fully_symmetric_g", r.fully_symmetric_g},
                  {"asym_slot", r.asym_slot},
                  {"clamp_events", r.clamp_events},
                  {"conventions_mismatch", r.conventions_mismatch}};
    return indent >= 0 ? j.dump(indent) : j.dump();
}

std::string bound_report_csv_header() {
    return "# cubecorr-bounds-csv v1\n"
           "n,kind_f,kind_g,mu_f,mu_g,cov,w1_fg,w1_ff,w1_gg,"
           "total_influence_f,total_influence_g,"
           "rhs_talagrand,rhs_kms,rhs_similar,rhs_regular,rhs_asymmetric,rhs_statement33,rhs_w1,"
           "asym_second_form,"
           "ratio_talagrand,ratio_kms,ratio_similar,ratio_regular,ratio_asymmetric,"
           "ratio_statement33,ratio_w1,"
           "monotone_f,monotone_g,is_similar,sim_min,sim_max,is_regular_f,is_regular_g,"
           "fully_symmetric_f,fully_symmetric_g,asym_slot,clamp_events,conventions_mismatch";
}

std::string bound_report_csv_row(const BoundReport& r) {
    std::string row;
    row += std::to_string(r.n) + ',' + to_string(r.kind_f) + ',' + to_string(r.kind_g) + ',';
    for (double v : {r.mu_f, r.mu_g, r.cov, r.w1_fg, r.w1_ff, r.w1_gg, r.total_influence_f,
                     r.total_influence_g, r.rhs_talagrand, r.rhs_kms, r.rhs_similar,
                     r.rhs_regular, r.rhs_asymmetric, r.rhs_statement33, r.rhs_w1,
                     r.asym_second_form, r.ratio_talagrand, r.ratio_kms, r.ratio_similar,
                     r.ratio_regular, r.ratio_asymmetric, r.ratio_statement33, r.ratio_w1})
        row += num(v) + ',';
    row += std::string(r.monotone_f ? "1" : "0") + ',' + (r.monotone_g ? "1" : "0") + ',' +
           (r.is_similar ? "1" : "0") + ',' + num(r.sim_min) + ',' + num(r.sim_max) + ',' +
           (r.is_regular_f ? "1" : "0") + ',' + (r.is_regular_g ? "1" : "0") + ',' +
           (r.fully_symmetric_f ? "1" : "0") + ',' + (r.fully_symmetric_g ? "1" : "0") + ',' +
           r.asym_slot + ',' + std::to_string(r.clamp_events) + ',' +
           (r.conventions_mismatch ? "1" : "0");
    return row;
}

} // namespace cubecorr
