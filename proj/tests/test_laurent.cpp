#include "bondedkb/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bkb;

namespace {

IntLaurent random_poly(std::mt19937_64& rng, int terms = 4) {
    std::map<int, BigInt> m;
    for (int i = 0; i < terms; ++i) m[static_cast<int>(rng() % 21) - 10] += static_cast<long>(rng() % 9) - 4;
    return IntLaurent::from_terms(m);
}

Coefficient random_coeff(std::mt19937_64& rng) {
    return Coefficient(random_poly(rng), static_cast<int>(rng() % 3), static_cast<int>(rng() % 3));
}

SkeinValue random_value(std::mt19937_64& rng) {
    SkeinValue v;
    for (int i = 0; i < 3; ++i) v.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}, random_coeff(rng));
    return v;
}

IntLaurent A(int k, long c = 1) { return IntLaurent::monomial(k, c); }

}  // namespace

TEST(Laurent, RingAxioms) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_EQ(p - p, IntLaurent());
        EXPECT_EQ(p * IntLaurent(1), p);
        EXPECT_EQ((p * q).mirrored(), p.mirrored() * q.mirrored());
    }
}

TEST(Laurent, EvaluationIsAHomomorphism) {
    std::mt19937_64 rng(12);
    const mpq_class a(3, 7);
    for (int i = 0; i < 50; ++i) {
        auto p = random_poly(rng), q = random_poly(rng);
        EXPECT_EQ((p * q).evaluate(a), p.evaluate(a) * q.evaluate(a));
        EXPECT_EQ((p + q).evaluate(a), p.evaluate(a) + q.evaluate(a));
    }
}

TEST(Laurent, ExactDivision) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        auto p = random_poly(rng), f = random_poly(rng);
        if (f.is_zero()) continue;
        auto q = exact_div(p * f, f);
        ASSERT_TRUE(q.has_value());
        EXPECT_EQ(*q, p);
    }
    EXPECT_FALSE(exact_div(IntLaurent(1), f1()).has_value());
    EXPECT_FALSE(exact_div(A(0) + A(1), A(0) + A(2)).has_value());
    EXPECT_THROW(exact_div(IntLaurent(1), IntLaurent()), std::domain_error);
}

TEST(Laurent, Constants) {
    const auto& k = constants();
    EXPECT_EQ(k.delta, A(-2, -1) + A(2, -1));
    EXPECT_EQ(k.mu, A(-4) + A(0) + A(4));
    EXPECT_EQ(k.delta * k.delta - IntLaurent(1), k.mu);
    EXPECT_EQ(k.delta_c * k.inv_delta, Coefficient(1));
    EXPECT_EQ(k.inv_delta, Coefficient(A(2, -1), 1, 0));
    EXPECT_EQ(k.inv_delta_mu * Coefficient(k.delta * k.mu), Coefficient(1));
}

TEST(Laurent, AlphaBetaCompactForm) {
    const auto& k = constants();
    const SkeinValue T = SkeinValue::theta(), H = SkeinValue::handcuff();
    EXPECT_EQ(k.alpha, Coefficient(A(4), 0, 1) * H + Coefficient(A(6), 1, 1) * T);
    EXPECT_EQ(k.beta, Coefficient(A(4), 0, 1) * T + Coefficient(A(6), 1, 1) * H);
    // alpha = (delta H - T)/(delta mu), beta = (delta T - H)/(delta mu)
    EXPECT_EQ(k.alpha, k.inv_delta_mu * (SkeinValue::scalar(k.delta_c) * H - T));
    EXPECT_EQ(k.beta, k.inv_delta_mu * (SkeinValue::scalar(k.delta_c) * T - H));
    EXPECT_EQ(subst_topological(k.alpha), Coefficient(A(4), 0, 1) * SkeinValue::scalar(k.delta_c) * T +
                                              Coefficient(A(6), 1, 1) * T);
}

TEST(Laurent, CoefficientsStayReduced) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        Coefficient c = random_coeff(rng);
        EXPECT_EQ(coeff_reduce(c), c);
        EXPECT_EQ(coeff_reduce(coeff_reduce(c)), coeff_reduce(c));
        if (!c.is_zero()) {
            EXPECT_FALSE(c.d1() > 0 && exact_div(c.num(), f1()).has_value());
            EXPECT_FALSE(c.d2() > 0 && exact_div(c.num(), f2()).has_value());
        }
    }
    EXPECT_EQ(Coefficient(f1() * f2(), 1, 1), Coefficient(1));
    EXPECT_EQ(Coefficient(f1(), 0, 0).times_factors(-1, 0), Coefficient(1));
}

TEST(Laurent, CoefficientField) {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 100; ++i) {
        auto a = random_coeff(rng), b = random_coeff(rng), c = random_coeff(rng);
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a - a, Coefficient());
    }
}

TEST(Laurent, ModuleOperations) {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 100; ++i) {
        auto u = random_value(rng), v = random_value(rng), w = random_value(rng);
        EXPECT_EQ(skein_add(u, v), skein_add(v, u));
        EXPECT_EQ(skein_mul(u, v), skein_mul(v, u));
        EXPECT_EQ(skein_mul(u, skein_add(v, w)), skein_add(skein_mul(u, v), skein_mul(u, w)));
        EXPECT_EQ(subst_topological(skein_mul(u, v)), skein_mul(subst_topological(u), subst_topological(v)));
        EXPECT_EQ(subst_topological(skein_add(u, v)), skein_add(subst_topological(u), subst_topological(v)));
        const SkeinValue s = subst_topological(u);
        for (const auto& [k, c] : s.terms()) EXPECT_EQ(k.second, 0);
    }
    EXPECT_EQ(subst_topological(SkeinValue::handcuff()), SkeinValue::scalar(constants().delta_c) * SkeinValue::theta());
}

TEST(Laurent, JsonRoundTrip) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        auto u = random_value(rng);
        EXPECT_EQ(SkeinValue::from_json(u.to_json()), u);
        EXPECT_EQ(SkeinValue::from_json(nlohmann::ordered_json::parse(u.to_json().dump())), u);
    }
    BigInt big("123456789012345678901234567890");
    EXPECT_EQ(bigint_from_json(bigint_to_json(big)), big);
    EXPECT_TRUE(bigint_to_json(BigInt(42)).is_number_integer());
}

TEST(Laurent, TextForms) {
    EXPECT_EQ((A(-4) + A(0) + A(4)).to_string(), "A^-4 + 1 + A^4");
    EXPECT_EQ(IntLaurent().to_string(), "0");
    EXPECT_EQ(SkeinValue::theta().to_string(), "T");
}
