#include <catch2/catch_amalgamated.hpp>

#include "dtcalc/poly.hpp"
#include "support.hpp"

using namespace dtcalc;

namespace {

Poly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars,
                 int terms = 4, std::uint32_t max_deg = 3) {
    std::uniform_int_distribution<std::uint32_t> deg(0, max_deg);
    Poly p(vars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(vars.size());
        for (auto& e : m) e = deg(rng);
        p.add_term(m, dtcalc::testing::random_scalar(rng));
    }
    return p;
}

} // namespace

TEST_CASE("grammar examples") {
    Poly p = parse_poly("x^2");
    REQUIRE(p.variables() == std::vector<std::string>{"x"});
    REQUIRE(p.coefficient({2}) == Scalar(1));

    Poly q = parse_poly("x^3 + y^3");
    REQUIRE(q.terms().size() == 2);

    Poly r = parse_poly("(1/2)*x - i*y");
    REQUIRE(r.coefficient({1, 0}) == Scalar(Rational(1, 2)));
    REQUIRE(r.coefficient({0, 1}) == -Scalar::i());
}

TEST_CASE("declaration order vs first-occurrence order") {
    Poly p = parse_poly("y + x");
    REQUIRE(p.variables() == std::vector<std::string>{"y", "x"});
    Poly q = parse_poly("y + x", std::vector<std::string>{"x", "y"});
    REQUIRE(q.variables() == std::vector<std::string>{"x", "y"});
    REQUIRE_THROWS_AS(parse_poly("z", std::vector<std::string>{"x"}), ParseError);
}

TEST_CASE("syntax errors carry byte offsets") {
    try {
        parse_poly("x + + y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.offset() == 4);
    }
    REQUIRE_THROWS_AS(parse_poly("x^99999999999"), DomainError);
    REQUIRE_THROWS_AS(parse_poly("x^4000000000"), DomainError);
}

TEST_CASE("render round-trips") {
    auto rng = testing::make_rng(20);
    std::vector<std::string> vars{"x", "y", "z"};
    for (int t = 0; t < 100; ++t) {
        Poly p = random_poly(rng, vars);
        Poly q = parse_poly(p.render(), vars);
        REQUIRE(q == p);
    }
    REQUIRE(parse_poly(Poly().render()).is_zero());
}

TEST_CASE("arithmetic is commutative and associative on random triples") {
    auto rng = testing::make_rng(21);
    std::vector<std::string> vars{"x", "y"};
    for (int t = 0; t < 40; ++t) {
        Poly a = random_poly(rng, vars, 3, 2);
        Poly b = random_poly(rng, vars, 3, 2);
        Poly c = random_poly(rng, vars, 3, 2);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("jacobian") {
    auto j1 = poly_jacobian(parse_poly("x^2"));
    REQUIRE(j1[0] == parse_poly("2*x"));
    auto j2 = poly_jacobian(parse_poly("x^3 + y^3"));
    REQUIRE(j2[0] == parse_poly("3*x^2", std::vector<std::string>{"x", "y"}));
    REQUIRE(j2[1] == parse_poly("3*y^2", std::vector<std::string>{"x", "y"}));
    auto j3 = poly_jacobian(parse_poly("5", std::vector<std::string>{"x", "y"}));
    REQUIRE(j3.size() == 2);
    REQUIRE(j3[0].is_zero());
    REQUIRE(j3[1].is_zero());
}

TEST_CASE("substitution and evaluation agree") {
    Poly h = parse_poly("x^2 + x*y");
    Poly sub = h.substitute({parse_poly("t", std::vector<std::string>{"t"}),
                             parse_poly("t^2", std::vector<std::string>{"t"})});
    REQUIRE(sub == parse_poly("t^2 + t^3", std::vector<std::string>{"t"}));
    REQUIRE(h.evaluate({Scalar(2), Scalar(3)}) == Scalar(10));
}
