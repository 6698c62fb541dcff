#include "doctest.h"

#include <cmath>

#include "cubecorr/bounds.hpp"
#include "cubecorr/families.hpp"
#include "cubecorr/scalars.hpp"
#include "cubecorr/verify.hpp"

using namespace cubecorr;

TEST_CASE("harris check on theorem inputs, precondition on others") {
    CHECK(check_harris(majority(3), dictator(3, 1)).passed);
    CHECK_THROWS_AS(check_harris(parity(3), majority(3)), std::invalid_argument);
}

TEST_CASE("noise correlation monotone in rho with matching endpoint derivative") {
    const CheckResult r = check_noise_monotone(tribes(6, 2), hamming_ball_mu(6, 0.3).table);
    CHECK(r.passed);
    CHECK(r.details.at("min_grid_step") >= -1e-12);
    CHECK(std::fabs(r.details.at("hprime_at_1") - r.details.at("sum_delta_inner")) <= 1e-10);
}

TEST_CASE("second-level estimator pins") {
    // dictator and majority-of-3 have no level-2 weight
    const FunctionTable d = to_signed(dictator(3, 1));
    CHECK(lemma_talagrand_constant(d, d) == 0.0);
    const FunctionTable m3 = to_signed(majority(3));
    CHECK(lemma_talagrand_constant(m3, m3) == 0.0);
    // tribes(4,2) signed: a positive pinned ratio, recomputed cheaply
    const FunctionTable t = to_signed(tribes(4, 2));
    const double v = lemma_talagrand_constant(t, t);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
}

TEST_CASE("level-d estimator range gating") {
    const FunctionTable t = to_signed(tribes(8, 2));
    const auto c2 = lemma_talagrand_d_constant(t, t, 2);
    // W_1 for this table is large, so even d = 2 falls outside (1 - ln W_1)/2
    const LevelWeights lw = level_weights(t, t);
    const bool in_range = 2.0 <= 0.5 * (1.0 - std::log(lw.sw[1]));
    CHECK(c2.has_value() == in_range);
    CHECK_FALSE(lemma_talagrand_d_constant(t, t, 100).has_value());
    CHECK(c_talagrand_d(2) == doctest::Approx(5 * std::exp(1.0) / 2 * 2 * std::exp(1.0))
                                  .epsilon(1e-14));
    CHECK_THROWS_AS(c_talagrand_d(1), std::invalid_argument);
}

TEST_CASE("chang estimator pins and gating") {
    // dictator in signed form has E|f| = 1 -> skipped
    CHECK_FALSE(chang_constant(to_signed(dictator(4, 1))).has_value());
    // constant zero function -> ratio 0
    const FunctionTable zero(3, ValueKind::Bounded, std::vector<double>(8, 0.0));
    CHECK(chang_constant(zero).value() == 0.0);
    // ball(12, t=8): mu = 299/4096, pinned ratio from the independent oracle
    const auto v = chang_constant(hamming_ball(12, 8));
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(1.0102282684898205).epsilon(1e-12));

    const double pc = chang_pair_constant(to_signed(majority(5)), 3);
    CHECK(pc >= 0.0);
    CHECK_THROWS_AS(chang_pair_constant(to_signed(dictator(4, 1)), 2), std::invalid_argument);
}

TEST_CASE("first-level optimality pin on the dictator") {
    CHECK(first_level_optimality(dictator(6, 3)) ==
          doctest::Approx(2.362464436598565).epsilon(1e-13));
    // fully asymmetric zero function degenerates to 0
    const FunctionTable zero(3, ValueKind::Indicator01, std::vector<double>(8, 0.0));
    CHECK(first_level_optimality(zero) == 0.0);
}

TEST_CASE("dual tightness: inclusion balls achieve cov = mu^2") {
    for (int t : {10, 11, 12}) {
        const FunctionTable a = hamming_ball(16, t);
        const CheckResult r = check_suf1(a);
        CHECK(r.passed);
        const double mu = mean(a);
        CHECK(std::fabs(r.details.at("cov") - mu * mu) <= 1e-12);
    }
}

TEST_CASE("composition preserves covariance, means and factorizes influences") {
    const FunctionTable f1 = hamming_ball_mu(4, 0.3).table;
    const FunctionTable f2 = dual(f1);
    const std::vector<FunctionTable> inners(4, majority(3));
    const CheckResult r = check_suf2(f1, f2, inners);
    CHECK(r.passed);
    CHECK(r.details.at("cov_deviation") <= 1e-12);
    CHECK(r.details.at("influence_deviation") <= 1e-12);

    // unbalanced inner -> precondition error
    const std::vector<FunctionTable> bad{majority(3), majority(3), majority(3),
                                         tribes(4, 2)};
    CHECK_THROWS_AS(check_suf2(f1, f2, bad), std::invalid_argument);
}

TEST_CASE("noise stability ratio preconditions") {
    CHECK_THROWS_AS(peres_ns_ratio(majority(3), 0.1), std::invalid_argument); // not pm1
    CHECK_THROWS_AS(peres_ns_ratio(to_signed(tribes(4, 2)), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(peres_ns_ratio(to_signed(majority(3)), 0.0), std::invalid_argument);
    // dictator: NS_eps = eps, ratio = sqrt(eps)
    const FunctionTable d = to_signed(dictator(5, 1));
    CHECK(peres_ns_ratio(d, 0.04) == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("level-1 weight versus the gaussian profile for majority") {
    const auto [gap, tau_pow] = mors_gap(to_signed(majority(15)));
    CHECK(gap == doctest::Approx(0.33987).epsilon(1e-4));
    CHECK(tau_pow == doctest::Approx(0.86502).epsilon(1e-4));
    CHECK(gap <= tau_pow);
    CHECK_THROWS_AS(mors_gap(majority(3)), std::invalid_argument);
}

TEST_CASE("cormaj score lifts even n with a dummy coordinate") {
    const double s12 = cormaj_score(tribes(12, 4));
    CHECK(s12 == doctest::Approx(0.160218).epsilon(1e-5));
    // odd input goes straight to majority of the same size
    const double s9 = cormaj_score(majority(9));
    CHECK(s9 > 0.0);
}

TEST_CASE("property suite passes and is deterministic") {
    const auto r1 = run_property_suite(123, 4, 6, 25);
    const auto r2 = run_property_suite(123, 4, 6, 25);
    REQUIRE(r1.size() == r2.size());
    for (size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].passed);
        CHECK(check_result_to_json(r1[i]) == check_result_to_json(r2[i]));
    }
    CHECK_THROWS_AS(run_property_suite(1, 0, 5, 10), std::invalid_argument);
}

TEST_CASE("scan finds the naive-bound violation") {
    ScanGenerator gen = parse_scan_generator(R"({"kind":"random_monotone_pairs","n":6,"k":3})");
    const CheckResult r = scan(gen, ScanTarget::Wrong2, 50, 2024);
    CHECK(r.passed); // a violation Cov < sum I_i I_i exists and is found
    REQUIRE(r.implied_constant.has_value());
    CHECK(*r.implied_constant < -1e-12);
    CHECK_FALSE(r.witness.empty());

    const CheckResult again = scan(gen, ScanTarget::Wrong2, 50, 2024);
    CHECK(check_result_to_json(again) == check_result_to_json(r));
}

TEST_CASE("scan targets produce extremal values") {
    ScanGenerator gen = parse_scan_generator(R"({"kind":"random_monotone_pairs","n":6,"k":3})");
    const CheckResult tight = scan(gen, ScanTarget::TightnessMin, 40, 5);
    CHECK(tight.passed);
    REQUIRE(tight.implied_constant.has_value());
    CHECK(*tight.implied_constant >= 0.0);

    const CheckResult chang = scan(gen, ScanTarget::ChangMax, 40, 5);
    CHECK(chang.passed);

    ScanGenerator grid = parse_scan_generator(
        R"({"kind":"example32_grid","n":10,"a_values":[0.25,0.125],"cap":20})");
    const CheckResult st = scan(grid, ScanTarget::Statement33, 10, 1);
    CHECK(st.passed);
    CHECK(st.details.at("evaluated") == 2.0);
    CHECK_THROWS_AS(scan_target_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("counterexample trend machinery validates its grid") {
    CHECK_THROWS_AS(counterexample_trend(31, 8, {0.25}, 24), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_trend(31, 8, {0.125, 0.25}, 24), std::invalid_argument);
    CHECK_THROWS_AS(counterexample_trend(30, 8, {0.25, 0.125}, 24), std::invalid_argument);
    // small-n smoke run: fills per-grid-point details either way
    const CheckResult r = counterexample_trend(31, 10, {0.25, 0.125}, 24);
    CHECK(r.details.count("0:cov") == 1);
    CHECK(r.details.count("1:ratio_rhs_over_cov_log1") == 1);
}
