#include <doctest.h>

#include "helpers.hpp"

using namespace csh;
using namespace testing;

TEST_SUITE("rational") {
    TEST_CASE("parse accepts exact fractions only") {
        CHECK(Rational::parse("3/6") == q(1, 2));
        CHECK(Rational::parse("-4") == q(-4));
        CHECK_THROWS_AS(Rational::parse("0.5"), ParseError);
        CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
        CHECK_THROWS_AS(Rational::parse(""), ParseError);
        try {
            Rational::parse("12x");
        } catch (const ParseError& e) {
            CHECK(e.position == 2);
        }
    }

    TEST_CASE("floor and ceil") {
        CHECK(q(-7, 2).floor() == -4);
        CHECK(q(-7, 2).ceil() == -3);
        CHECK(q(7, 2).floor() == 3);
        CHECK(q(6, 3).ceil() == 2);
    }

    TEST_CASE("promotes past 64 bits and demotes back") {
        Rational big = Rational(std::numeric_limits<std::int64_t>::max()) * Rational(4);
        CHECK_FALSE(big.is_small());
        CHECK(big.str() == "36893488147419103228");
        CHECK_THROWS_AS(big.num(), OverflowError);
        Rational back = big / Rational(4);
        CHECK(back.is_small());
        CHECK(back == Rational(std::numeric_limits<std::int64_t>::max()));
        CHECK(big > back);
        CHECK(-big < Rational(0));
        CHECK(Rational::parse("36893488147419103228/4") == back);
        Rational tiny = Rational(1, 3037000499) * Rational(1, 3037000499) * Rational(1, 3037000499);
        CHECK_FALSE(tiny.is_small());
        CHECK(tiny.sign() == 1);
        CHECK(tiny * Rational(3037000499) * Rational(3037000499) == Rational(1, 3037000499));
    }
}

TEST_SUITE("novikov") {
    TEST_CASE("normalize") {
        CHECK(series(Field::Q, {{1, 0}, {-1, 0}}).is_exact_zero());
        auto x = series(Field::Q, {{2, 1}, {3, q(1, 2)}});
        REQUIRE(x.terms().size() == 2);
        CHECK(x.terms()[0].e == q(1, 2));
        CHECK(x.terms()[0].c.re == 3);
        CHECK(x.terms()[1].e == 1);
        auto y = series(Field::Q, {{1, 0}, {1, 5}}, Rational(3));
        CHECK(y == series(Field::Q, {{1, 0}}, Rational(3)));
        CHECK(y.terms().size() == 1);
    }

    TEST_CASE("add") {
        CHECK(add(series(Field::Q, {{1, 0}, {1, 1}}), series(Field::Q, {{1, 1}})) == series(Field::Q, {{1, 0}, {2, 1}}));
        CHECK(add(NovikovScalar::t_power(Field::F2, q(1, 2)), NovikovScalar::t_power(Field::F2, q(1, 2))).is_exact_zero());
        auto s = add(series(Field::Q, {{1, 0}}, Rational(2)), NovikovScalar::t_power(Field::Q, 3));
        CHECK(s == series(Field::Q, {{1, 0}}, Rational(2)));
        CHECK_THROWS_AS(add(NovikovScalar::one(Field::Q), NovikovScalar::one(Field::F2)), FieldMismatch);
    }

    TEST_CASE("mul") {
        CHECK(mul(series(Field::Q, {{1, 0}, {1, 1}}), series(Field::Q, {{1, 0}, {-1, 1}})) ==
              series(Field::Q, {{1, 0}, {-1, 2}}));
        CHECK(mul(NovikovScalar::t_power(Field::Q, q(1, 3)), NovikovScalar::t_power(Field::Q, q(2, 3))) ==
              NovikovScalar::t_power(Field::Q, 1));
        // i * i = -1
        CHECK(mul(gauss(0, 1, 0), gauss(0, 1, 0)) == gauss(-1, 0, 0));
    }

    TEST_CASE("valuation") {
        auto v = valuation(series(Field::Q, {{3, q(1, 2)}, {2, 1}}));
        CHECK(*v.value == q(1, 2));
        CHECK_FALSE(v.indeterminate);
        CHECK_FALSE(valuation(NovikovScalar::zero(Field::Q)).value.has_value());
        auto j = valuation(series(Field::Q, {}, Rational(5)));
        CHECK(*j.value == 5);
        CHECK(j.indeterminate);
    }

    TEST_CASE("invert") {
        auto u = invert(series(Field::Q, {{1, 0}, {-1, 1}}), 3);
        CHECK(exact_part_below(u, 3) == series(Field::Q, {{1, 0}, {1, 1}, {1, 2}}));
        CHECK(invert(NovikovScalar::t_power(Field::Q, q(1, 2)), 4) == NovikovScalar::t_power(Field::Q, q(-1, 2)));
        auto f = invert(series(Field::F2, {{1, 0}, {1, 1}}), 2);
        CHECK(exact_part_below(f, 2) == series(Field::F2, {{1, 0}, {1, 1}}));
        CHECK_THROWS_AS(invert(NovikovScalar::zero(Field::Q), 3), NotAUnit);
    }

    TEST_CASE("truncate") {
        auto x = truncate(series(Field::Q, {{1, 0}, {1, 1}, {1, 2}}), 0, 1);
        CHECK(x.terms() == series(Field::Q, {{1, 1}}).terms());
        CHECK(*x.precision() == 1);
        auto z = truncate(NovikovScalar::t_power(Field::Q, q(1, 2)), 1, 2);
        CHECK_FALSE(z.has_terms());
        CHECK(*z.precision() == 2);
        auto w = series(Field::Q, {{2, -3}, {5, q(7, 4)}});
        auto id = truncate(w, -1000000, 1000000);
        CHECK(id.terms() == w.terms());
    }

    TEST_CASE("truncate keeps a shorter jet precision") {
        auto x = truncate(series(Field::Q, {{1, 0}}, Rational(2)), -1, 5);
        CHECK(*x.precision() == 2);
    }
}

TEST_SUITE("novikov-properties") {
    TEST_CASE("1000 random cases: valuation additivity, associativity, inverse") {
        std::mt19937_64 rng(20240611);
        const Field fields[] = {Field::F2, Field::Q, Field::QI};
        for (int i = 0; i < 1000; ++i) {
            Field f = fields[i % 3];
            auto x = random_scalar(rng, f, 4, 6, -2, 4);
            auto y = random_scalar(rng, f, 4, 6, -2, 4);
            auto z = random_scalar(rng, f, 3, 4, -1, 3);
            CAPTURE(i);
            CAPTURE(x.str());
            CAPTURE(y.str());
            CHECK(*valuation(mul(x, y)).value == *valuation(x).value + *valuation(y).value);
            CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
            CHECK(add(add(x, y), z) == add(x, add(y, z)));
            CHECK(mul(x, add(y, z)) == add(mul(x, y), mul(x, z)));
            CHECK(mul(x, y) == mul(y, x));
            Rational target = *valuation(x).value + 6;
            auto inv = invert(x, target);
            auto p = mul(x, inv);
            auto err = sub(p, NovikovScalar::one(f));
            auto v = valuation(err);
            // the inverse is known modulo T^target, so x * x^{-1} = 1 modulo T^{target + val(x)}
            CHECK((!v.value || *v.value >= target + *valuation(x).value));
        }
    }
}
