#pragma once

#include <random>
#include <vector>

#include "dtcalc/dtcalc.hpp"

namespace dtcalc::testing {

// Deterministic RNG for reproducible randomized tests.
inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed1234abcdefULL) {
    return std::mt19937_64(seed);
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 5,
                                int den_range = 3) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

inline Scalar random_scalar(std::mt19937_64& rng, bool gaussian = true) {
    Rational re = random_rational(rng);
    Rational im = gaussian ? random_rational(rng) : Rational(0);
    return Scalar(re, im);
}

inline Scalar random_nonzero_scalar(std::mt19937_64& rng) {
    for (;;) {
        Scalar s = random_scalar(rng);
        if (!s.is_zero()) return s;
    }
}

inline Matrix<Scalar> random_matrix(std::mt19937_64& rng, std::size_t rows,
                                    std::size_t cols) {
    Matrix<Scalar> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(rng);
    return m;
}

inline Matrix<Scalar> random_symmetric_invertible(std::mt19937_64& rng, std::size_t n) {
    for (;;) {
        Matrix<Scalar> a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Scalar v = random_scalar(rng);
                a(i, j) = v;
                a(j, i) = v;
            }
        if (!a.det().is_zero()) return a;
    }
}

// Random Lagrangian via a random word in the elementary symplectic generators
// applied to the horizontal subspace of the standard space.
inline LagrangianSubspace random_lagrangian(std::mt19937_64& rng, const SpacePtr& space) {
    std::size_t n = space->n();
    Matrix<Scalar> basis = horizontal_lagrangian(space).basis();
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> count(1, 3);
    int words = count(rng);
    for (int w = 0; w < words; ++w) {
        Matrix<Scalar> g(2 * n, 2 * n);
        switch (kind(rng)) {
            case 0: {  // [[I, B], [0, I]], B symmetric
                Matrix<Scalar> b = random_symmetric_invertible(rng, n);
                g = Matrix<Scalar>::identity(2 * n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) g(i, n + j) = b(i, j);
                break;
            }
            case 1: {  // [[I, 0], [C, I]], C symmetric
                Matrix<Scalar> c = random_symmetric_invertible(rng, n);
                g = Matrix<Scalar>::identity(2 * n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) g(n + i, j) = c(i, j);
                break;
            }
            default: {  // [[P, 0], [0, P^{-T}]]
                Matrix<Scalar> p(n, n);
                do {
                    p = random_matrix(rng, n, n);
                } while (p.det().is_zero());
                Matrix<Scalar> pit = p.inverse().transpose();
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        g(i, j) = p(i, j);
                        g(n + i, n + j) = pit(i, j);
                    }
                break;
            }
        }
        basis = basis * g;
    }
    return LagrangianSubspace(space, basis);
}

// Random consecutively transverse chain of the given length.
inline std::vector<LagrangianSubspace> random_chain(std::mt19937_64& rng,
                                                    const SpacePtr& space,
                                                    std::size_t length) {
    std::vector<LagrangianSubspace> chain;
    chain.push_back(random_lagrangian(rng, space));
    while (chain.size() < length) {
        LagrangianSubspace next = random_lagrangian(rng, space);
        if (transverse(chain.back(), next)) chain.push_back(next);
    }
    return chain;
}

inline MonodromyData random_monodromy(std::mt19937_64& rng, int max_blocks = 3,
                                      int max_size = 4, int max_den = 12) {
    std::uniform_int_distribution<int> nblocks(1, max_blocks);
    std::uniform_int_distribution<int> den(1, max_den);
    std::uniform_int_distribution<int> size(1, max_size);
    std::vector<JordanBlockSet> blocks;
    int nb = nblocks(rng);
    for (int b = 0; b < nb; ++b) {
        int q = den(rng);
        std::uniform_int_distribution<int> num(0, q - 1);
        Rational r(-num(rng), q);
        blocks.push_back(JordanBlockSet{r, {size(rng)}});
    }
    return MonodromyData(std::move(blocks));
}

} // namespace dtcalc::testing
