#include <catch2/catch_amalgamated.hpp>

#include "dtcalc/scalar.hpp"
#include "support.hpp"

using namespace dtcalc;

TEST_CASE("field axioms hold exactly on random triples") {
    auto rng = testing::make_rng(1);
    for (int t = 0; t < 200; ++t) {
        Scalar a = testing::random_scalar(rng);
        Scalar b = testing::random_scalar(rng);
        Scalar c = testing::random_scalar(rng);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        if (!a.is_zero()) {
            REQUIRE((a * a.inverse()).is_one());
            REQUIRE(b / a * a == b);
        }
    }
}

TEST_CASE("rationals embed with zero imaginary part") {
    Scalar r(Rational(7, 3));
    REQUIRE(r.is_rational());
    REQUIRE((Scalar::i() * Scalar::i()) == Scalar(-1));
}

TEST_CASE("division by zero is rejected") {
    REQUIRE_THROWS_AS(Scalar(1) / Scalar(0), DomainError);
}

TEST_CASE("scalar strings round-trip") {
    auto rng = testing::make_rng(2);
    for (int t = 0; t < 200; ++t) {
        Scalar s = testing::random_scalar(rng);
        REQUIRE(parse_scalar(s.to_string()) == s);
    }
    REQUIRE(parse_scalar("1-2i") == Scalar(Rational(1), Rational(-2)));
    REQUIRE(parse_scalar("3/2") == Scalar(Rational(3, 2)));
    REQUIRE(parse_scalar("-i") == Scalar(Rational(0), Rational(-1)));
    REQUIRE(parse_scalar("0") == Scalar(0));
    REQUIRE_THROWS_AS(parse_scalar("1+"), ParseError);
    REQUIRE_THROWS_AS(parse_scalar("i2"), ParseError);
}

TEST_CASE("square roots in Q(i)") {
    auto four = sqrt_in_field(Scalar(4));
    REQUIRE(four);
    REQUIRE(four->first == Scalar(2));
    REQUIRE(four->second == Scalar(-2));

    auto minus_one = sqrt_in_field(Scalar(-1));
    REQUIRE(minus_one);
    REQUIRE(minus_one->first == Scalar::i());

    REQUIRE_FALSE(sqrt_in_field(Scalar(2)));
    REQUIRE_FALSE(sqrt_in_field(Scalar(Rational(1), Rational(1))));

    auto two_i = sqrt_in_field(Scalar(Rational(0), Rational(2)));
    REQUIRE(two_i);
    REQUIRE(two_i->first == Scalar(Rational(1), Rational(1)));

    // roots of squares always exist and square back
    auto rng = testing::make_rng(3);
    for (int t = 0; t < 100; ++t) {
        Scalar s = testing::random_scalar(rng);
        auto r = sqrt_in_field(s * s);
        REQUIRE(r);
        REQUIRE(r->first * r->first == s * s);
        REQUIRE(r->second == -r->first);
    }
}
