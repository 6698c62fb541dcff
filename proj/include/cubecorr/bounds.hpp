#pragma once

#include <string>

#include "cubecorr/function_table.hpp"
#include "cubecorr/spectral.hpp"

namespace cubecorr {

// Every lower-bound right-hand side, evaluated constant-free on a pair of
// monotone tables.  All W-quantities are influence products
// (W_1(f,g) = sum_i I_i(f)I_i(g)); arguments of log/phi/psi are clamped into
// their domains with the clamp counted, and a clamp by more than 4x sets
// conventions_mismatch instead of erroring.
struct BoundReport {
    int n = 0;
    ValueKind kind_f = ValueKind::Bounded;
    ValueKind kind_g = ValueKind::Bounded;
    double mu_f = 0.0, mu_g = 0.0;
    double cov = 0.0;
    double w1_fg = 0.0, w1_ff = 0.0, w1_gg = 0.0;
    double total_influence_f = 0.0, total_influence_g = 0.0;

    double rhs_talagrand = 0.0;
    double rhs_kms = 0.0;
    double rhs_similar = 0.0;
    double rhs_regular = 0.0;
    double rhs_asymmetric = 0.0;
    double rhs_statement33 = 0.0;
    double rhs_w1 = 0.0;
    double asym_second_form = 0.0; // mu'(sym)(1-mu'(sym))/sqrt(n) * sum psi1(I_i(other)), display only

    double ratio_talagrand = 0.0; // cov/rhs, +inf when rhs = 0
    double ratio_kms = 0.0;
    double ratio_similar = 0.0;
    double ratio_regular = 0.0;
    double ratio_asymmetric = 0.0;
    double ratio_statement33 = 0.0;
    double ratio_w1 = 0.0;

    bool monotone_f = false, monotone_g = false;
    bool is_similar = false;
    double sim_min = 0.0, sim_max = 0.0; // nan when some I_i(g) = 0
    bool is_regular_f = false, is_regular_g = false;
    bool fully_symmetric_f = false, fully_symmetric_g = false;
    std::string asym_slot; // which argument fed psi_n: "f", "g", or "f(unmet)"
    int clamp_events = 0;
    bool conventions_mismatch = false;
};

double rhs_talagrand(const FunctionTable& f, const FunctionTable& g);
double rhs_kms(const FunctionTable& f, const FunctionTable& g);
double rhs_similar(const FunctionTable& f, const FunctionTable& g);
double rhs_regular(const FunctionTable& f, const FunctionTable& g);
// f is the fully symmetric argument (psi_n slot).
double rhs_asymmetric(const FunctionTable& f, const FunctionTable& g);
double rhs_statement33(const FunctionTable& f, const FunctionTable& g);
double rhs_w1(const FunctionTable& f, const FunctionTable& g);

BoundReport bound_report(const FunctionTable& f, const FunctionTable& g);

// Claim Comparison inequalities on the report's clamped evaluators:
// (a) rhs_similar >= rhs_talagrand, (b) rhs_similar >= 0.5*rhs_kms (tol 1e-12).
bool check_comparison_claims(const FunctionTable& f, const FunctionTable& g);
bool check_comparison_claims(const BoundReport& r);

std::string bound_report_to_json(const BoundReport& r, int indent = 2);
std::string bound_report_csv_header(); // includes schema-version comment line
std::string bound_report_csv_row(const BoundReport& r);

} // namespace cubecorr
