#include <pinchcalc/core.hpp>

#include <gtest/gtest.h>

#include <numeric>

using namespace pinchcalc;

TEST(ExtGcd, SmallPairs) {
    auto r = ext_gcd(4, 7);
    EXPECT_EQ(r.g, 1);
    EXPECT_EQ(r.x, 2);
    EXPECT_EQ(r.y, -1);

    r = ext_gcd(1, 12);
    EXPECT_EQ(r.g, 1);
    EXPECT_EQ(r.x, 1);
    EXPECT_EQ(r.y, 0);

    EXPECT_EQ(ext_gcd(6, 9).g, 3);
}

TEST(ExtGcd, BezoutIdentityHoldsWithSigns) {
    for (long a = -40; a <= 40; ++a) {
        for (long b = -40; b <= 40; ++b) {
            if (a == 0 && b == 0) continue;
            const auto r = ext_gcd(a, b);
            EXPECT_EQ(r.g, std::gcd(a, b)) << a << "," << b;
            EXPECT_EQ(Integer(a) * r.x + Integer(b) * r.y, r.g) << a << "," << b;
        }
    }
}

TEST(ExtGcd, ZeroZeroIsDomainError) { EXPECT_THROW(ext_gcd(0, 0), DomainError); }

TEST(ModInverse, Examples) {
    EXPECT_EQ(mod_inverse(4, 9), 7);
    EXPECT_EQ(mod_inverse(1, 13), 1);
    EXPECT_EQ(mod_inverse(3, 5), 2);
    EXPECT_EQ(mod_inverse(-1, 5), 4);
}

TEST(ModInverse, Errors) {
    EXPECT_THROW(mod_inverse(6, 9), DomainError);
    EXPECT_THROW(mod_inverse(3, 1), DomainError);
}

TEST(ModInverse, AllCoprimePairsUpTo200) {
    for (long a = 2; a <= 200; ++a) {
        for (long m = 2; m <= 200; ++m) {
            if (std::gcd(a, m) != 1) continue;
            const Integer inv = mod_inverse(a, m);
            ASSERT_GE(inv, 1);
            ASSERT_LE(inv, m - 1);
            ASSERT_EQ(mod_floor(inv * a, m), 1) << a << " mod " << m;
        }
    }
}

TEST(Normalize, Examples) {
    EXPECT_EQ(normalize(9, 4), (TorusKnot{4, 9, false}));
    EXPECT_EQ(normalize(3, 5), (TorusKnot{5, 3, false}));
    EXPECT_EQ(normalize(-3, 5), (TorusKnot{5, 3, true}));
    EXPECT_EQ(normalize(3, -5), (TorusKnot{5, 3, true}));
    EXPECT_EQ(normalize(-3, -5), (TorusKnot{5, 3, false}));
}

TEST(Normalize, Unknots) {
    EXPECT_EQ(normalize(1, 1), (TorusKnot{1, 1, false}));
    EXPECT_EQ(normalize(0, 1), (TorusKnot{0, 1, false}));
    EXPECT_EQ(normalize(1, 0), (TorusKnot{0, 1, false}));
    EXPECT_EQ(normalize(1, 6), (TorusKnot{6, 1, false}));
    EXPECT_EQ(normalize(1, 7), (TorusKnot{7, 1, false}));
    EXPECT_TRUE(normalize(1, 7).is_unknot());
    EXPECT_FALSE(normalize(2, 3).is_unknot());
}

TEST(Normalize, Errors) {
    try {
        normalize(6, 9);
        FAIL();
    } catch (const InvalidKnot& e) {
        EXPECT_EQ(e.reason(), InvalidKnot::Reason::NotCoprime);
        EXPECT_NE(std::string(e.what()).find("not coprime"), std::string::npos);
    }
    try {
        normalize(4, 6);
        FAIL();
    } catch (const InvalidKnot& e) {
        EXPECT_EQ(e.reason(), InvalidKnot::Reason::BothEven);
    }
    EXPECT_THROW(normalize(0, 0), InvalidKnot);
    EXPECT_THROW(normalize(0, 3), InvalidKnot);
}

TEST(Normalize, IdempotentSymmetricAndNormal) {
    for (long p = -30; p <= 30; ++p) {
        for (long q = -30; q <= 30; ++q) {
            const long g = std::gcd(p, q);
            if (g != 1) continue;
            const TorusKnot k = normalize(p, q);
            EXPECT_TRUE(is_normal_form(k.p, k.q)) << p << "," << q;
            EXPECT_EQ(normalize(k), (TorusKnot{k.p, k.q, k.mirrored}));
            EXPECT_EQ(normalize(q, p), k);
            EXPECT_EQ(normalize(k.p, k.q).mirrored, false);
        }
    }
}

TEST(Normalize, BigIntegers) {
    const Integer big("123456789012345678901234567891");
    const TorusKnot k = normalize(Integer(2), big);
    EXPECT_EQ(k.p, 2);
    EXPECT_EQ(k.q, big);
}

TEST(Helpers, ExactDivAndParse) {
    EXPECT_EQ(exact_div(12, 4, "t"), 3);
    EXPECT_THROW(exact_div(13, 4, "t"), ConsistencyError);
    EXPECT_EQ(parse_integer("-17"), Integer(-17));
    EXPECT_EQ(parse_integer("+5"), Integer(5));
    EXPECT_FALSE(parse_integer("5x"));
    EXPECT_FALSE(parse_integer(""));
    EXPECT_FALSE(parse_integer("-"));
    EXPECT_EQ(mod_small(Integer(-3), 4), 1);
}
