#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ffcount/equations.hpp"
#include "oracle.hpp"

namespace ffcount {
namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Parse;
}

std::vector<Element> ones(std::size_t n) { return std::vector<Element>(n, Element{1}); }

CarlitzEquation carlitz(Exponents m, std::uint64_t k, Exponents kv) {
    CarlitzEquation eq;
    eq.a = ones(m.size());
    eq.m = std::move(m);
    eq.k = k;
    eq.kv = std::move(kv);
    return eq;
}

TEST(ReduceExponents, Examples) {
    const auto r = reduce_exponents(make_field(7, 1), Exponents{4, 9});
    EXPECT_EQ(r.d, (Exponents{2, 3}));
    EXPECT_EQ(r.M, 36);
    EXPECT_EQ(r.D, 6U);
    EXPECT_EQ(reduce_exponents(make_field(2, 1), Exponents{6, 9, 4}).d, (Exponents{1, 1, 1}));
    EXPECT_EQ(reduce_exponents(make_field(5, 1), Exponents{8, 6}).d, (Exponents{4, 2}));
}

TEST(ReduceExponents, PowerImagesCoincide) {
    // x -> x^m and x -> x^gcd(m, q-1) have the same value multiset on F_q.
    std::mt19937_64 rng(11);
    for (auto [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {13, 1}, {2, 4}}) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        for (int trial = 0; trial < 10; ++trial) {
            const std::uint64_t m = 1 + rng() % 40;
            const auto d = reduce_exponents(f, Exponents{m}).d[0];
            std::vector<int> hist_m(f.order()), hist_d(f.order());
            for (std::uint32_t x = 0; x < f.order(); ++x) {
                ++hist_m[ref.pow(x, m)];
                ++hist_d[ref.pow(x, d)];
            }
            EXPECT_EQ(hist_m, hist_d) << "q=" << f.order() << " m=" << m;
        }
    }
}

TEST(ReduceExponents, LcmDivisibilityProperty) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const Field f = make_field(std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13}[trial % 6], 1 + trial % 2);
        Exponents m(2 + trial % 3);
        for (auto& v : m) v = 1 + rng() % 30;
        const auto r = reduce_exponents(f, m);
        EXPECT_EQ(Integer(r.M) % r.D, 0);
        for (std::size_t j = 0; j < m.size(); ++j) {
            EXPECT_EQ((f.order() - 1) % r.d[j], 0U);
            EXPECT_EQ(m[j] % r.d[j], 0U);
        }
    }
}

TEST(Thm1Applicable, Examples) {
    EXPECT_EQ(thm1_applicable({1, 3}), std::optional<std::size_t>{0});
    EXPECT_FALSE(thm1_applicable({2, 2}).has_value());
    EXPECT_FALSE(thm1_applicable({6, 2, 3}).has_value());
    EXPECT_EQ(thm1_applicable({2, 3, 3}), std::optional<std::size_t>{0});
    EXPECT_EQ(thm1_applicable({3, 3, 2}), std::optional<std::size_t>{2});
}

TEST(PairwiseCoprime, Examples) {
    EXPECT_TRUE(pairwise_coprime({2, 3, 5}));
    EXPECT_FALSE(pairwise_coprime({2, 4}));
    EXPECT_TRUE(pairwise_coprime({1, 1, 1}));
}

TEST(CarlitzGcd, Examples) {
    EXPECT_TRUE(carlitz_gcd_condition(carlitz({1, 1, 1}, 2, {1, 1, 1}), make_field(7, 1)));
    EXPECT_FALSE(carlitz_gcd_condition(carlitz({2, 2}, 1, {1, 1}), make_field(5, 1)));
    EXPECT_TRUE(carlitz_gcd_condition(carlitz({1, 2}, 1, {1, 1}), make_field(7, 1)));
    EXPECT_EQ(carlitz_exponent(carlitz({2, 2}, 1, {1, 1})), 0);
    EXPECT_EQ(carlitz_exponent(carlitz({2, 3}, 1, {1, 1})), -1);
}

TEST(PzcCondition, Examples) {
    EXPECT_TRUE(pzc_condition(carlitz({1, 1, 1}, 2, {1, 1, 1}), make_field(7, 1)));
    EXPECT_FALSE(pzc_condition(carlitz({2, 4}, 1, {1, 1}), make_field(5, 1)));
    EXPECT_FALSE(pzc_condition(carlitz({1, 3}, 1, {2, 1}), make_field(7, 1)));
}

TEST(ConditionsEquivalence, Examples) {
    const auto e1 = carlitz({2, 2}, 1, {1, 1});
    EXPECT_FALSE(pzc_condition(e1, make_field(5, 1)));
    EXPECT_TRUE(conditions_equivalence(e1, make_field(5, 1)));
    const auto e2 = carlitz({1, 1, 1}, 2, {1, 1, 1});
    EXPECT_TRUE(pzc_condition(e2, make_field(7, 1)));
    EXPECT_TRUE(conditions_equivalence(e2, make_field(7, 1)));
}

TEST(ConditionsEquivalence, RandomInstances) {
    std::mt19937_64 rng(2024);
    const std::vector<std::pair<std::uint32_t, unsigned>> fields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3},
                                                                     {3, 2}, {11, 1}, {13, 1}, {2, 4}, {17, 1}, {19, 1},
                                                                     {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5},
                                                                     {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}, {53, 1},
                                                                     {59, 1}, {61, 1}, {2, 6}};
    for (int trial = 0; trial < 2000; ++trial) {
        const auto [p, s] = fields[rng() % fields.size()];
        const Field f = make_field(p, s);
        const std::size_t n = 2 + rng() % 3;
        Exponents m(n), kv(n);
        for (auto& v : m) v = 1 + rng() % 12;
        for (auto& v : kv) v = 1 + rng() % 12;
        ASSERT_TRUE(conditions_equivalence(carlitz(m, 1 + rng() % 12, kv), f));
    }
}

TEST(Thm4Split, Examples) {
    const auto a = thm4_split({2, 1});
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->t, 1U);
    EXPECT_EQ(a->permutation, (std::vector<std::size_t>{1, 0}));
    const auto b = thm4_split({2, 2});
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(b->t, 0U);
    EXPECT_TRUE(thm4_split({4, 6}).has_value());
    EXPECT_TRUE(thm4_split({4, 2, 6}).has_value());
    EXPECT_FALSE(thm4_split({4, 4}).has_value());
    EXPECT_EQ(permuted(Exponents{2, 1}, a->permutation), (Exponents{1, 2}));
}

TEST(Thm4Split, PermutationProperties) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        Exponents d(2 + rng() % 4);
        for (auto& v : d) v = 1 + rng() % 8;
        const auto split = thm4_split(d);
        if (!split) continue;
        auto sorted = split->permutation;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> iota(d.size());
        std::iota(iota.begin(), iota.end(), 0);
        EXPECT_EQ(sorted, iota);
        const auto pd = permuted(d, split->permutation);
        for (std::size_t i = 0; i < pd.size(); ++i) EXPECT_EQ(pd[i] % 2 == 1, i < split->t);
    }
}

TEST(Baoulina, Examples) {
    EXPECT_TRUE(baoulina_condition(carlitz({1, 1, 1}, 2, {1, 1, 1}), make_field(7, 1)));
    auto shaped = carlitz({1, 1}, 1, {1, 1});
    shaped.a = {Element{1}, Element{2}};
    EXPECT_FALSE(baoulina_condition(shaped, make_field(7, 1)));
    EXPECT_TRUE(baoulina_condition(carlitz({2, 3}, 1, {1, 1}), make_field(7, 1)));
    EXPECT_FALSE(baoulina_condition(carlitz({1, 1}, 1, {2, 1}), make_field(7, 1)));
}

QuasiHomogeneousEquation qh(std::vector<Term> terms, Exponents rv, std::uint64_t r, Exponents kv) {
    QuasiHomogeneousEquation eq;
    eq.n = rv.size();
    eq.terms = std::move(terms);
    eq.rv = std::move(rv);
    eq.r = r;
    eq.kv = std::move(kv);
    return eq;
}

TEST(QuasiHomogeneity, Examples) {
    const auto weighted = qh({{Element{1}, {2, 0}}, {Element{1}, {0, 3}}}, {3, 2}, 6, {1, 1});
    for (auto [p, s] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        const auto check = quasihomogeneity_check(weighted, make_field(p, s));
        EXPECT_TRUE(check.structural);
        EXPECT_TRUE(check.holds);
    }
    // diagonal with weights M / m_j
    const auto diag = qh({{Element{1}, {2, 0, 0}}, {Element{2}, {0, 3, 0}}, {Element{3}, {0, 0, 6}}}, {3, 2, 1}, 6, {1, 1, 1});
    EXPECT_TRUE(quasihomogeneity_check(diag, make_field(7, 1)).holds);
    const auto constant = qh({{Element{1}, {1, 0}}, {Element{1}, {0, 0}}}, {1, 1}, 1, {1, 1});
    const auto c = quasihomogeneity_check(constant, make_field(7, 1));
    EXPECT_FALSE(c.structural);
    EXPECT_FALSE(c.holds);
}

TEST(QuasiHomogeneity, FunctionalCoincidenceAcceptedWhenExhaustive) {
    // Over F_3 the last two terms cancel as functions, leaving x_2 of weight 2.
    const auto eq = qh({{Element{1}, {0, 1}}, {Element{1}, {3, 2}}, {Element{2}, {1, 2}}}, {1, 2}, 2, {1, 1});
    const auto check = quasihomogeneity_check(eq, make_field(3, 1));
    EXPECT_FALSE(check.structural);
    EXPECT_TRUE(check.exhaustive);
    EXPECT_TRUE(check.complete);
    EXPECT_TRUE(check.holds);
    EXPECT_FALSE(quasihomogeneity_check(eq, make_field(5, 1)).holds);
}

TEST(QuasiHomogeneity, MatchesBruteScalingIdentity) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const Field f = make_field(std::vector<std::uint32_t>{3, 5, 7}[trial % 3], 1);
        const oracle::NaiveField ref(f.characteristic(), 1);
        std::vector<Term> terms;
        const std::size_t count = 1 + rng() % 3;
        for (std::size_t i = 0; i < count; ++i) {
            Exponents e{1 + rng() % 4, rng() % 4};
            bool dup = false;
            for (const auto& t : terms) dup = dup || t.exps == e;
            if (!dup) terms.push_back({Element{static_cast<std::uint32_t>(1 + rng() % (f.order() - 1))}, e});
        }
        const Exponents rv{1 + rng() % 3, 1 + rng() % 3};
        const std::uint64_t r = 1 + rng() % 8;
        const auto eq = qh(terms, rv, r, {1, 1});
        bool identity = true;
        for (std::uint32_t c = 0; c < f.order(); ++c) {
            for (std::uint32_t x1 = 0; x1 < f.order(); ++x1) {
                for (std::uint32_t x2 = 0; x2 < f.order(); ++x2) {
                    std::uint32_t lhs = 0, rhs = 0;
                    for (const auto& t : terms) {
                        const std::uint32_t y1 = ref.mul(ref.pow(c, rv[0]), x1), y2 = ref.mul(ref.pow(c, rv[1]), x2);
                        lhs = ref.add(lhs, ref.mul(t.coeff.index(), ref.mul(ref.pow(y1, t.exps[0]), ref.pow(y2, t.exps[1]))));
                        rhs = ref.add(rhs, ref.mul(t.coeff.index(), ref.mul(ref.pow(x1, t.exps[0]), ref.pow(x2, t.exps[1]))));
                    }
                    identity = identity && lhs == ref.mul(ref.pow(c, r), rhs);
                }
            }
        }
        EXPECT_EQ(quasihomogeneity_check(eq, f).holds, identity);
    }
}

TEST(QuasiHomogGcd, Examples) {
    const auto e1 = qh({{Element{1}, {2, 0}}, {Element{1}, {0, 3}}}, {3, 2}, 6, {1, 1});
    EXPECT_TRUE(quasihomog_gcd_condition(e1, make_field(7, 1)));
    const auto e2 = qh({{Element{1}, {1, 1}}}, {1, 1}, 2, {1, 1});
    EXPECT_FALSE(quasihomog_gcd_condition(e2, make_field(5, 1)));
    const auto e3 = qh({{Element{1}, {1, 0}}, {Element{1}, {0, 1}}}, {1, 1}, 1, {2, 1});
    EXPECT_FALSE(quasihomog_gcd_condition(e3, make_field(7, 1)));
    const auto bad = qh({{Element{1}, {1, 0}}, {Element{1}, {0, 2}}}, {1, 1}, 1, {1, 1});
    EXPECT_EQ(kind_of([&] { quasihomog_gcd_condition(bad, make_field(7, 1)); }), ErrorKind::NotQuasiHomogeneous);
}

TEST(Validate, RejectsMalformedEquations) {
    const Field f = make_field(5, 1);
    EXPECT_EQ(kind_of([&] { validate(f, DiagonalEquation{{Element{1}}, {1}}); }), ErrorKind::InvalidEquation);
    EXPECT_EQ(kind_of([&] { validate(f, DiagonalEquation{{Element{1}, Element{0}}, {1, 1}}); }),
              ErrorKind::InvalidEquation);
    EXPECT_EQ(kind_of([&] { validate(f, DiagonalEquation{{Element{1}, Element{7}}, {1, 1}}); }),
              ErrorKind::InvalidEquation);
    EXPECT_EQ(kind_of([&] { validate(f, DiagonalEquation{{Element{1}, Element{1}}, {1, 0}}); }),
              ErrorKind::InvalidEquation);
    auto c = carlitz({1, 1}, 1, {1});
    EXPECT_EQ(kind_of([&] { validate(f, c); }), ErrorKind::InvalidEquation);
    c = carlitz({1, 1}, 0, {1, 1});
    EXPECT_EQ(kind_of([&] { validate(f, c); }), ErrorKind::InvalidEquation);
    c = carlitz({1, 1}, 1, {1, 1});
    c.b = Element{0};
    EXPECT_EQ(kind_of([&] { validate(f, c); }), ErrorKind::InvalidEquation);
    const auto dup = qh({{Element{1}, {1, 0}}, {Element{2}, {1, 0}}}, {1, 1}, 1, {1, 1});
    EXPECT_EQ(kind_of([&] { validate(f, dup); }), ErrorKind::InvalidEquation);
    EXPECT_NO_THROW(validate(f, Equation{carlitz({1, 1}, 1, {1, 1})}));
}

}  // namespace
}  // namespace ffcount
