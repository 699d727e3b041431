#include <catch2/catch_amalgamated.hpp>

#include "dtcalc/matrix.hpp"
#include "support.hpp"

using namespace dtcalc;

TEST_CASE("determinant, inverse and rank are exact") {
    auto rng = testing::make_rng(10);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + (t % 5);
        Matrix<Scalar> m = testing::random_matrix(rng, n, n);
        Scalar d = m.det();
        if (d.is_zero()) {
            REQUIRE(m.rank() < n);
            REQUIRE_THROWS_AS(m.inverse(), DomainError);
        } else {
            REQUIRE(m.rank() == n);
            REQUIRE(m * m.inverse() == Matrix<Scalar>::identity(n));
            REQUIRE(m.inverse() * m == Matrix<Scalar>::identity(n));
        }
    }
}

TEST_CASE("kernel basis spans the kernel") {
    auto rng = testing::make_rng(11);
    for (int t = 0; t < 40; ++t) {
        Matrix<Scalar> m = testing::random_matrix(rng, 2 + t % 3, 4);
        Matrix<Scalar> k = m.kernel_basis();
        REQUIRE(k.rows() + m.rank() == 4);
        if (k.rows() > 0) REQUIRE((m * k.transpose()).is_zero());
    }
}

TEST_CASE("solve_left expresses rows exactly") {
    auto rng = testing::make_rng(12);
    for (int t = 0; t < 30; ++t) {
        Matrix<Scalar> basis = testing::random_matrix(rng, 3, 5);
        if (basis.rank() < 3) continue;
        Matrix<Scalar> coef = testing::random_matrix(rng, 2, 3);
        Matrix<Scalar> rhs = coef * basis;
        Matrix<Scalar> solved = basis.solve_left(rhs);
        REQUIRE(solved * basis == rhs);
        REQUIRE(solved == coef);
    }
}

TEST_CASE("matrix powers") {
    Matrix<Scalar> j{{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}};
    Matrix<Scalar> j3 = j.pow(3);
    REQUIRE(j3(0, 1) == Scalar(3));
    REQUIRE(j.pow(0) == Matrix<Scalar>::identity(2));
}
