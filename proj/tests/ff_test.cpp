#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "ffcount/ff.hpp"
#include "oracle.hpp"

namespace ffcount {
namespace {

struct PS {
    std::uint32_t p;
    unsigned s;
};

const std::vector<PS> kSmallFields = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {2, 2}, {2, 3}, {2, 4},
                                      {2, 5}, {2, 6}, {3, 2}, {3, 3}, {5, 2}, {7, 2}};

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Parse;
}

TEST(MakeField, PrimeField) {
    const Field f = make_field(7, 1);
    EXPECT_EQ(f.order(), 7U);
    EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{0, 1}));
}

TEST(MakeField, FourElementsUsesOnlyIrreducibleQuadratic) {
    const Field f = make_field(2, 2);
    EXPECT_EQ(f.order(), 4U);
    EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
}

TEST(MakeField, Errors) {
    EXPECT_EQ(kind_of([] { make_field(4, 1); }), ErrorKind::NotPrime);
    EXPECT_EQ(kind_of([] { make_field(1, 1); }), ErrorKind::NotPrime);
    EXPECT_EQ(kind_of([] { make_field(5, 0); }), ErrorKind::DegreeOutOfRange);
    EXPECT_EQ(kind_of([] { make_field(2, 21); }), ErrorKind::FieldTooLarge);
    EXPECT_EQ(kind_of([] { make_field(7, 2, FieldLimits{48}); }), ErrorKind::FieldTooLarge);
    EXPECT_NO_THROW(make_field(7, 2, FieldLimits{49}));
}

TEST(MakeField, ModulusMatchesReferenceSearch) {
    for (auto [p, s] : kSmallFields) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        if (s > 1) {
            EXPECT_EQ(f.modulus(), ref.modulus()) << p << "^" << s;
        }
    }
}

TEST(MakeField, Deterministic) {
    const Field a = make_field(3, 3);
    const Field b = make_field(3, 3);
    EXPECT_EQ(a.modulus(), b.modulus());
    EXPECT_EQ(a.generator(), b.generator());
    for (auto x : a.elements())
        for (auto y : a.elements()) ASSERT_EQ(a.mul(x, y), b.mul(x, y));
}

TEST(MakeField, LargestDefaultFieldBuilds) {
    const Field f = make_field(2, 20);
    EXPECT_EQ(f.order(), 1U << 20U);
    const Element x{123457};
    EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
    EXPECT_EQ(f.pow(x, f.order()), x);
}

TEST(Arithmetic, Examples) {
    const Field f7 = make_field(7, 1);
    EXPECT_EQ(f7.add(Element{3}, Element{5}), Element{1});
    const Field f4 = make_field(2, 2);
    const Element alpha{2};
    EXPECT_EQ(f4.mul(alpha, alpha), Element{3});  // alpha + 1
    for (auto a : f4.elements()) EXPECT_EQ(f4.mul(a, f4.one()), a);
}

TEST(Arithmetic, AgreesWithSchoolbookReference) {
    for (auto [p, s] : kSmallFields) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            ASSERT_EQ(f.neg(Element{a}).index(), ref.neg(a));
            for (std::uint32_t b = 0; b < f.order(); ++b) {
                ASSERT_EQ(f.add(Element{a}, Element{b}).index(), ref.add(a, b)) << p << "^" << s;
                ASSERT_EQ(f.mul(Element{a}, Element{b}).index(), ref.mul(a, b)) << p << "^" << s;
                ASSERT_EQ(f.sub(Element{a}, Element{b}).index(), ref.add(a, ref.neg(b)));
            }
        }
    }
}

TEST(Arithmetic, FieldAxiomsExhaustive) {
    for (auto [p, s] : std::vector<PS>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {2, 6}}) {
        const Field f = make_field(p, s);
        ASSERT_LE(f.order(), 64U);
        const auto els = f.elements();
        for (auto a : els) {
            ASSERT_EQ(f.add(a, f.zero()), a);
            ASSERT_EQ(f.add(a, f.neg(a)), f.zero());
            for (auto b : els) {
                ASSERT_EQ(f.add(a, b), f.add(b, a));
                ASSERT_EQ(f.mul(a, b), f.mul(b, a));
                for (auto c : els) {
                    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST(Inverse, Examples) {
    const Field f7 = make_field(7, 1);
    EXPECT_EQ(f7.inv(Element{3}), Element{5});
    const Field f4 = make_field(2, 2);
    EXPECT_EQ(f4.inv(Element{2}), Element{3});
    EXPECT_EQ(kind_of([&] { f7.inv(f7.zero()); }), ErrorKind::DivisionByZero);
}

TEST(Inverse, ProductIsOne) {
    for (auto [p, s] : kSmallFields) {
        const Field f = make_field(p, s);
        for (std::uint32_t a = 1; a < f.order(); ++a) ASSERT_EQ(f.mul(Element{a}, f.inv(Element{a})), f.one());
    }
}

TEST(Pow, Examples) {
    const Field f7 = make_field(7, 1);
    EXPECT_EQ(f7.pow(Element{3}, 6), f7.one());
    EXPECT_EQ(f7.pow(f7.zero(), 0), f7.one());
    EXPECT_EQ(make_field(5, 1).pow(Element{2}, 3), Element{3});
    EXPECT_EQ(kind_of([&] { f7.pow(Element{2}, -1); }), ErrorKind::NegativeExponent);
}

TEST(Pow, MatchesRepeatedMultiplication) {
    for (auto [p, s] : kSmallFields) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        for (std::uint32_t a = 0; a < f.order(); ++a) {
            for (std::uint64_t e : {0, 1, 2, 3, 5, 12, 25, 64, 100}) {
                ASSERT_EQ(f.pow(Element{a}, e).index(), ref.pow(a, e)) << a << "^" << e;
            }
        }
    }
}

TEST(Pow, FermatIdentities) {
    for (auto [p, s] : kSmallFields) {
        const Field f = make_field(p, s);
        for (auto x : f.elements()) {
            if (!x.is_zero()) {
                ASSERT_EQ(f.pow(x, f.order() - 1), f.one());
            }
            ASSERT_EQ(f.pow(x, f.order()), x);
        }
    }
}

TEST(Elements, Order) {
    const Field f3 = make_field(3, 1);
    EXPECT_EQ(f3.elements(), (std::vector<Element>{Element{0}, Element{1}, Element{2}}));
    const Field f4 = make_field(2, 2);
    const auto els = f4.elements();
    ASSERT_EQ(els.size(), 4U);
    EXPECT_EQ(f4.coeffs(els[0]), (std::vector<std::uint32_t>{0, 0}));
    EXPECT_EQ(f4.coeffs(els[1]), (std::vector<std::uint32_t>{1, 0}));
    EXPECT_EQ(f4.coeffs(els[2]), (std::vector<std::uint32_t>{0, 1}));
    EXPECT_EQ(f4.coeffs(els[3]), (std::vector<std::uint32_t>{1, 1}));
    EXPECT_EQ(make_field(3, 2).elements().size(), 9U);
}

TEST(Elements, CoefficientRoundTripAndValidation) {
    const Field f = make_field(3, 2);
    for (auto x : f.elements()) EXPECT_EQ(f.from_coeffs(f.coeffs(x)), x);
    const std::vector<std::uint32_t> bad{3, 0};
    EXPECT_EQ(kind_of([&] { f.from_coeffs(bad); }), ErrorKind::MalformedElement);
    EXPECT_EQ(kind_of([&] { f.element(9); }), ErrorKind::MalformedElement);
    EXPECT_EQ(kind_of([&] { f.add(Element{9}, Element{1}); }), ErrorKind::MalformedElement);
}

TEST(Generator, Examples) {
    EXPECT_EQ(make_field(7, 1).generator(), Element{3});
    EXPECT_EQ(make_field(2, 1).generator(), Element{1});
    EXPECT_EQ(make_field(5, 1).generator(), Element{2});
}

TEST(Generator, FirstElementOfFullOrder) {
    for (auto [p, s] : kSmallFields) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        std::uint32_t expected = 1;
        while (ref.order_of(expected) != f.order() - 1) ++expected;
        EXPECT_EQ(f.generator().index(), expected) << p << "^" << s;

        std::set<std::uint32_t> powers;
        for (std::uint64_t i = 0; i + 1 < f.order(); ++i) powers.insert(f.pow(f.generator(), i).index());
        EXPECT_EQ(powers.size(), f.order() - 1U);
        EXPECT_EQ(powers.count(0), 0U);
    }
}

TEST(QuadraticCharacter, Examples) {
    const Field f7 = make_field(7, 1);
    EXPECT_EQ(f7.quadratic_character(Element{2}), CharValue::Positive);
    EXPECT_EQ(f7.quadratic_character(Element{3}), CharValue::Negative);
    EXPECT_EQ(f7.quadratic_character(f7.zero()), CharValue::Zero);
    EXPECT_EQ(make_field(3, 2).quadratic_character(Element{0}), CharValue::Zero);
    EXPECT_EQ(kind_of([] { make_field(2, 2).quadratic_character(Element{1}); }),
              ErrorKind::EvenCharacteristicUndefined);
}

TEST(QuadraticCharacter, MatchesSquaresAndIsMultiplicative) {
    for (auto [p, s] : std::vector<PS>{{3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {7, 2}}) {
        const oracle::NaiveField ref(p, s);
        const Field f = make_field(p, s);
        ASSERT_LE(f.order(), 49U);
        std::uint32_t positives = 0;
        for (auto x : f.elements()) {
            const int eta = to_int(f.quadratic_character(x));
            if (!x.is_zero()) {
                ASSERT_EQ(eta == 1, ref.is_square(x.index()));
            }
            if (eta == 1) ++positives;
            for (auto y : f.elements()) {
                ASSERT_EQ(to_int(f.quadratic_character(f.mul(x, y))), eta * to_int(f.quadratic_character(y)));
            }
        }
        EXPECT_EQ(positives, (f.order() - 1) / 2);
    }
}

TEST(DiscreteLog, Examples) {
    const Field f7 = make_field(7, 1);
    const Element g{3};
    EXPECT_EQ(f7.discrete_log(g, f7.one()), 0U);
    EXPECT_EQ(f7.discrete_log(g, Element{6}), 3U);
    EXPECT_EQ(kind_of([&] { f7.discrete_log(g, f7.zero()); }), ErrorKind::ZeroArgument);
    EXPECT_EQ(kind_of([&] { f7.discrete_log(Element{2}, Element{3}); }), ErrorKind::NotAGenerator);
}

TEST(DiscreteLog, InvertsPow) {
    const Field f = make_field(3, 3);
    const Element g = f.generator();
    for (std::uint64_t t = 0; t + 1 < f.order(); ++t) ASSERT_EQ(f.discrete_log(g, f.pow(g, t)), t);
}

TEST(Display, PolynomialForm) {
    const Field f4 = make_field(2, 2);
    EXPECT_EQ(f4.to_string(Element{0}), "0");
    EXPECT_EQ(f4.to_string(Element{3}), "1+a");
    const Field f9 = make_field(3, 2);
    EXPECT_EQ(f9.to_string(Element{7}), "1+2*a");
    EXPECT_EQ(make_field(2, 3).to_string(Element{4}), "a^2");
    EXPECT_EQ(make_field(7, 1).to_string(Element{5}), "5");
    EXPECT_EQ(f9.notation(), "3^2");
}

}  // namespace
}  // namespace ffcount
