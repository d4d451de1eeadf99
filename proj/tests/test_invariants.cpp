#include <pinchcalc/invariants.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace pinchcalc;

namespace {

// Plain one-step-at-a-time transcriptions, used to check the collapsed loops.
long naive_sigma(long a, long b) {
    if (a > b) std::swap(a, b);
    if (a <= 1) return 0;
    if (a == 2) return -(b - 1);
    if (2 * a < b) return naive_sigma(b - 2 * a, a) - (a % 2 ? a * a - 1 : a * a);
    return -naive_sigma(2 * a - b, a) - (a % 2 ? a * a - 1 : a * a - 2);
}

long naive_upsilon(long a, long b) {
    if (a > b) std::swap(a, b);
    if (a <= 1) return 0;
    return naive_upsilon(a, b - a) - (a % 2 ? (a * a - 1) / 4 : a * a / 4);
}

template <typename F>
void for_each_normalized(long pmax, long qmax, F&& f) {
    for (long p = 2; p <= pmax; ++p) {
        for (long q = 3; q <= qmax; q += 2) {
            if (std::gcd(p, q) == 1 && is_normal_form(p, q)) f(p, q);
        }
    }
}

}  // namespace

TEST(SignatureRecursive, NamedValues) {
    EXPECT_EQ(signature_recursive(TorusKnot{2, 7}), -6);
    EXPECT_EQ(signature_recursive(TorusKnot{5, 3}), -8);
    EXPECT_EQ(signature_recursive(TorusKnot{3, 5}), -8);
    EXPECT_EQ(signature_recursive(TorusKnot{1, 11}), 0);
    EXPECT_EQ(signature_recursive(TorusKnot{6, 5}), -16);
    EXPECT_EQ(signature_recursive(TorusKnot{5, 6}), -16);
    EXPECT_EQ(signature_recursive(TorusKnot{2, 3}), -2);
    EXPECT_EQ(signature_recursive(TorusKnot{3, 4}), -6);
}

TEST(SignatureRecursive, TwoStrandBoundary) {
    for (long b = 1; b <= 99; b += 2) EXPECT_EQ(signature_recursive(2, b), -(b - 1));
}

TEST(SignatureRecursive, MatchesStepwiseRecursion) {
    for (long a = 0; a <= 90; ++a) {
        for (long b = 0; b <= 90; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ASSERT_EQ(signature_recursive(a, b), naive_sigma(a, b)) << a << "," << b;
        }
    }
}

TEST(UpsilonRecursive, Values) {
    EXPECT_EQ(upsilon_recursive(TorusKnot{2, 3}), -1);
    EXPECT_EQ(upsilon_recursive(TorusKnot{3, 4}), -2);
    EXPECT_EQ(upsilon_recursive(TorusKnot{1, 1}), 0);
    EXPECT_EQ(upsilon_recursive(TorusKnot{0, 1}), 0);
    EXPECT_EQ(upsilon_recursive(TorusKnot{5, 3}), -3);
    EXPECT_EQ(upsilon_recursive(TorusKnot{6, 5}), -6);
    EXPECT_EQ(upsilon_recursive(TorusKnot{4, 9}), -8);
}

TEST(UpsilonRecursive, MatchesStepwiseRecursion) {
    for (long a = 0; a <= 120; ++a) {
        for (long b = 0; b <= 120; ++b) {
            if (std::gcd(a, b) != 1) continue;
            ASSERT_EQ(upsilon_recursive(a, b), naive_upsilon(a, b)) << a << "," << b;
        }
    }
}

TEST(ClosedForms, Examples) {
    const PinchSequence s53 = pinch_sequence(TorusKnot{5, 3});
    const PinchSequence s49 = pinch_sequence(TorusKnot{4, 9});
    const PinchSequence s65 = pinch_sequence(TorusKnot{6, 5});
    const PinchSequence s87 = pinch_sequence(TorusKnot{8, 7});

    EXPECT_EQ(signature_closed(s53), -8);
    EXPECT_EQ(signature_closed(s49), -16);
    EXPECT_EQ(signature_closed(s65), -16);

    EXPECT_EQ(upsilon_closed(s53), -3);
    EXPECT_EQ(upsilon_closed(s65), -6);
    EXPECT_EQ(upsilon_closed(s49), -8);

    EXPECT_EQ(gap_closed(s53), 1);
    EXPECT_EQ(gap_closed(s49), 0);
    EXPECT_EQ(gap_closed(s87), 3);
    EXPECT_EQ(gap_closed(s65), 2);

    const PinchSequence u = pinch_sequence(TorusKnot{1, 1});
    EXPECT_EQ(signature_closed(u), 0);
    EXPECT_EQ(upsilon_closed(u), 0);
    EXPECT_EQ(gap_closed(u), 0);
}

TEST(ClosedForms, IndexSets) {
    // m = [4]: T(p,q) with seed {2, p0=3, q1=3, eps=[1,1], m=[4]}.
    const PinchSequence s = synthesize({2, 3, 3, {1, 1}, {Integer(4)}});
    EXPECT_EQ(index_set_I(s), (std::vector<std::size_t>{1}));
    const PinchSequence e = synthesize({4, 2, 3, {1, 1, -1, 1}, {Integer(2), Integer(2), Integer(2)}});
    EXPECT_EQ(index_set_J(e), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(alternating_sum(4, {2, 3}), 2 - 1);
    EXPECT_EQ(alternating_sum(5, {}), 0);
}

TEST(ClosedForms, EqualRecursionsOnFullScan) {
    std::size_t count = 0;
    for_each_normalized(150, 150, [&](long p, long q) {
        ++count;
        const TorusKnot k{p, q};
        const PinchSequence s = pinch_sequence(k);
        const Integer sig = signature_recursive(k);
        const Integer ups = upsilon_recursive(k);
        ASSERT_EQ(signature_closed(s), sig) << p << "," << q;
        ASSERT_EQ(upsilon_closed(s), ups) << p << "," << q;
        const Integer gap = gap_closed(s);
        ASSERT_EQ(2 * gap, 2 * ups - sig) << p << "," << q;
        ASSERT_GE(gap, 0);
        ASSERT_LE(gap, static_cast<unsigned long>(s.n()));
        ASSERT_TRUE(is_even(sig));
        const Integer half = (s.p0() - Integer(p) * q) / 2;
        ASSERT_EQ(mod_small(half - static_cast<unsigned long>(s.n()), 2), 0);
    });
    EXPECT_GT(count, 6000u);
}

TEST(ClosedForms, HugeSynthesizedKnots) {
    // Far beyond machine integers; both evaluations must still agree.
    SeedData seed{60, 5, 7, std::vector<int>(60, -1), std::vector<Integer>(59, Integer(6))};
    seed.eps[10] = 1;
    seed.ms[20] = 4;
    const PinchSequence s = synthesize(seed);
    ASSERT_FALSE(fits_int64(s.p(60)));
    EXPECT_EQ(signature_closed(s), signature_recursive(s.top()));
    EXPECT_EQ(upsilon_closed(s), upsilon_recursive(s.top()));
    EXPECT_EQ(2 * gap_closed(s), 2 * upsilon_closed(s) - signature_closed(s));
}

TEST(Report, FourNine) {
    const InvariantReport r = report(TorusKnot{4, 9});
    EXPECT_EQ(r.sigma, -16);
    EXPECT_EQ(r.upsilon, -8);
    EXPECT_EQ(r.gap, 0);
    EXPECT_EQ(r.oss_lower, 0);
    EXPECT_EQ(r.gamma4_predicted, 2);
    EXPECT_EQ(r.gamma4_lower, 0);
    EXPECT_EQ(r.gamma4_upper, 2);
}

TEST(Report, SixFiveAndUnknot) {
    const InvariantReport r = report(TorusKnot{6, 5});
    EXPECT_EQ(r.gap, 2);
    EXPECT_EQ(r.gamma4_lower, 2);
    EXPECT_EQ(r.gamma4_upper, 2);

    const InvariantReport u = report(TorusKnot{1, 1});
    EXPECT_EQ(u.n, 0u);
    EXPECT_EQ(u.sigma, 0);
    EXPECT_EQ(u.upsilon, 0);
    EXPECT_EQ(u.gap, 0);
    EXPECT_EQ(u.gamma4_upper, 0);
}

TEST(Report, MirrorKeepsPositiveValuesAndFlag) {
    const InvariantReport pos = report(normalize(4, 9));
    const InvariantReport neg = report(normalize(-4, 9));
    EXPECT_TRUE(neg.knot.mirrored);
    EXPECT_EQ(neg.sigma, pos.sigma);
    EXPECT_EQ(neg.gap, pos.gap);
    EXPECT_EQ(neg.signed_sigma(), 16);
    EXPECT_EQ(neg.signed_upsilon(), 8);
    EXPECT_EQ(neg.gamma4_lower, pos.gamma4_lower);
    EXPECT_EQ(neg.gamma4_upper, pos.gamma4_upper);
}

TEST(Report, FastAndFullAgree) {
    for_each_normalized(60, 60, [](long p, long q) {
        const PinchSequence s = pinch_sequence(TorusKnot{p, q});
        ASSERT_EQ(report(s, CheckLevel::Fast), report(s, CheckLevel::Full));
    });
}

TEST(StageIdentities, WorkedValues) {
    const PinchSequence s87 = pinch_sequence(TorusKnot{8, 7});
    const StageReport r87 = verify_stage_identities(s87);
    ASSERT_TRUE(r87.ok());
    ASSERT_EQ(r87.checks.size(), 9u);
    // k = 1: rho_{1,3} = 3, rho_{2,3} = 2, giving T(5,1).
    EXPECT_EQ(r87.checks[0].a, 5);
    EXPECT_EQ(r87.checks[0].b, 1);
    EXPECT_EQ(r87.checks[0].expected4, 0);
    // k = n: T(1,1).
    EXPECT_EQ(r87.checks[6].a, 1);
    EXPECT_EQ(r87.checks[6].b, 1);
    EXPECT_EQ(r87.checks[6].actual, 0);

    const StageReport r49 = verify_stage_identities(pinch_sequence(TorusKnot{4, 9}));
    ASSERT_TRUE(r49.ok());
    EXPECT_EQ(r49.checks[0].a, 3);
    EXPECT_EQ(r49.checks[0].b, 1);
    EXPECT_EQ(r49.checks[0].expected4, 0);
}

TEST(StageIdentities, HoldOnFullScan) {
    for_each_normalized(150, 150, [](long p, long q) {
        const StageReport r = verify_stage_identities(pinch_sequence(TorusKnot{p, q}));
        ASSERT_TRUE(r.ok()) << p << "," << q << " fails at k=" << r.failures().front().k;
    });
}

TEST(StageIdentities, DetectsWrongClosedValue) {
    StageCheck c;
    c.actual = -2;
    c.expected4 = -4;
    EXPECT_FALSE(c.ok());
    c.expected4 = -8;
    EXPECT_TRUE(c.ok());
}
