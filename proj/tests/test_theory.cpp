#include <doctest.h>

#include <string>

#include "krec/theory.hpp"

using namespace krec;

TEST_CASE("region classifier spot checks") {
    auto at = [](double a, double b) { return classify_region(a, b); };

    CHECK(at(1.0, 3.5).verdict == Verdict::Feasible);
    CHECK(at(1.0, 3.5).binding == Bound::TwoAlphaPlusOne); // tie 2a+1 = a+2
    CHECK(at(1.0, 2.5).verdict == Verdict::Infeasible);
    CHECK(at(1.0, 2.5).binding == Bound::TwoAlphaPlusOne);
    CHECK(at(0.5, 2.2).verdict == Verdict::Unknown);
    CHECK(at(0.5, 2.2).binding == Bound::None);

    CHECK(at(0.3, 2.5).verdict == Verdict::Feasible);
    CHECK(at(0.3, 2.5).binding == Bound::AlphaPlusTwo);
    CHECK(at(0.3, 1.7).verdict == Verdict::Infeasible);
    CHECK(at(0.3, 1.7).binding == Bound::AlphaPlusThreeHalves);
    CHECK(at(0.3, 2.0).verdict == Verdict::Unknown);
    CHECK(at(0.5, 1.9).verdict == Verdict::Infeasible);
    CHECK(at(0.5, 1.9).binding == Bound::TwoAlphaPlusOne);

    // points on a boundary stay open
    CHECK(at(1.0, 3.0).verdict == Verdict::Unknown);
    CHECK(at(0.3, 2.3).verdict == Verdict::Unknown);
}

TEST_CASE("verdict and bound names") {
    CHECK(std::string(verdict_name(Verdict::Feasible)) == "feasible");
    CHECK(std::string(verdict_name(Verdict::Infeasible)) == "infeasible");
    CHECK(std::string(verdict_name(Verdict::Unknown)) == "unknown");
    CHECK(std::string(bound_name(Bound::TwoAlphaPlusOne)) == "2a+1");
    CHECK(std::string(bound_name(Bound::AlphaPlusTwo)) == "a+2");
    CHECK(std::string(bound_name(Bound::AlphaPlusThreeHalves)) == "a+3/2");
    CHECK(std::string(bound_name(Bound::None)) == "none");
}

TEST_CASE("closed-form event bounds") {
    EventBounds eb = event_bounds(make_params(64, 8, 21));
    CHECK(eb.a == 0.015625);
    CHECK(eb.b == doctest::Approx(5817.0 / 4194304.0).epsilon(1e-12));
    CHECK(eb.c == 0.00390625);
    CHECK(eb.d == 0.001953125);

    CHECK(repeat_free_bound(make_params(128, 4, 24)) == 0.01953125);
}

TEST_CASE("counting statistics on hand instances") {
    SourceSet x = SourceSet::from_text("0101\n0110\n");
    CHECK(v_statistic(x, 2) == 1);

    SourceSet x2 = SourceSet::from_text("00111\n01110\n");
    CHECK(u_statistic(x2, 2) == 3);
    CHECK(v_statistic(x2, 2) == 1);

    SourceSet one = SourceSet::from_text("01010\n");
    CHECK(v_statistic(one, 2) == 0);
    CHECK(u_statistic(one, 2) == 0);
}

TEST_CASE("moment reports at pinned parameter points") {
    MomentReport v = moments_V(make_params(64, 4, 8));
    CHECK(v.e_first == 1.3359375); // C(4,2) * 57 / 2^8
    CHECK(v.e_second_bound == 80.0);
    CHECK(v.pz_lower == doctest::Approx(0.022309112548828125).epsilon(1e-12));

    MomentReport v2 = moments_V(make_params(64, 4, 6));
    CHECK(v2.e_first == 5.53125);
    CHECK(v2.e_second_bound == 448.0);
    CHECK(v2.pz_lower == doctest::Approx(0.06829180036272321).epsilon(1e-12));

    MomentReport u = moments_U(make_params(64, 2, 6));
    CHECK(u.e_first == doctest::Approx(205379.0 / 262144.0).epsilon(1e-15));
    CHECK(u.e_second_bound == 507904.0);
    CHECK(u.pz_lower == doctest::Approx(1.2085109584313338e-6).epsilon(1e-9));
}

TEST_CASE("paley-zygmund ratios stay under their limits and approach them") {
    CHECK(kPzLimitV == 0.25);
    CHECK(kPzLimitU == 1.0 / 16384.0);

    // beta = 2*alpha + 1 is beta = 3 at alpha = 1; sample below it (beta = 2)
    double pv1 = moments_V(make_params(256, 256, 16)).pz_lower;
    double pv2 = moments_V(make_params(1024, 1024, 20)).pz_lower;
    double pv3 = moments_V(make_params(4096, 4096, 24)).pz_lower;
    CHECK(pv1 == doctest::Approx(0.1954078790731728).epsilon(1e-9));
    CHECK(pv2 == doctest::Approx(0.23130333879669338).epsilon(1e-9));
    CHECK(pv3 == doctest::Approx(0.24421765140401303).epsilon(1e-9));
    CHECK(pv1 < pv2);
    CHECK(pv2 < pv3);
    CHECK(pv3 < kPzLimitV);

    double pu1 = moments_U(make_params(1u << 16, 1u << 16, 32)).pz_lower;
    double pu2 = moments_U(make_params(1u << 20, 1u << 20, 40)).pz_lower;
    double pu3 = moments_U(make_params(1u << 24, 1u << 24, 48)).pz_lower;
    CHECK(pu1 == doctest::Approx(1.2172055524130385e-05).epsilon(1e-9));
    CHECK(pu2 == doctest::Approx(4.100126944049106e-05).epsilon(1e-9));
    CHECK(pu3 == doctest::Approx(5.797675512526726e-05).epsilon(1e-9));
    CHECK(pu1 < pu2);
    CHECK(pu2 < pu3);
    CHECK(pu3 < kPzLimitU);

    // limits hold for every parameter choice, not just in the scaling regime
    for (unsigned n : {16u, 64u, 256u, 1024u})
        for (unsigned m : {2u, 4u, 16u})
            for (unsigned k : {4u, 8u, 12u}) {
                if (k + 1 > n) continue;
                Params p = make_params(n, m, k);
                CHECK(moments_V(p).pz_lower <= kPzLimitV + 1e-12);
                CHECK(moments_U(p).pz_lower <= kPzLimitU + 1e-15);
            }
}
