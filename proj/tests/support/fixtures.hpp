#ifndef QPMAP_TESTS_FIXTURES_HPP
#define QPMAP_TESTS_FIXTURES_HPP

#include "qpmap/map.hpp"

namespace qpmap::testkit {

// n = 2, m = 1: lambda = (1, -1), A = [[2], [-2]], B = [[1, 1]].
inline QPMap map_single_pair() { return QPMap::create({1, -1}, {{2}, {-2}}, {{1, 1}}); }

// Same as map_single_pair but B = [[1, 2]]: violates the diagonal product condition.
inline QPMap map_unequal_exponents() { return QPMap::create({1, -1}, {{2}, {-2}}, {{1, 2}}); }

// lambda = (-1, 1), A = [[1], [-1]], B = [[1, 1]]: multiplier 1 at x = (1, 1).
inline QPMap map_unit_multiplier() { return QPMap::create({-1, 1}, {{1}, {-1}}, {{1, 1}}); }

// n = 4, m = 5 two-pair pattern with every named entry equal to 1 and
// lambda_1 = 1, lambda_2 = 2.
inline QPMap map_two_pairs(const Rational& lambda1 = 1, const Rational& lambda2 = 2) {
    RationalMatrix a{{0, 0, 0, 1, 1}, {1, 1, 1, 0, 0}, {0, 0, 0, -1, -1}, {-1, -1, -1, 0, 0}};
    RationalMatrix b{{0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 0, 1, 0}};
    return QPMap::create({lambda1, lambda2, -lambda1, -lambda2}, a, b);
}

// Lotka-Volterra map with the given lambda and A (B = identity).
inline QPMap lotka_volterra(RationalVector lambda, RationalMatrix a) {
    const std::size_t n = lambda.size();
    return QPMap::create(std::move(lambda), std::move(a), RationalMatrix::identity(n));
}

// Counterexample obtained from map_single_pair with C = diag(1, 2).
inline QPMap map_diag12_image() { return QPMap::create({1, ratio(-1, 2)}, {{2}, {-1}}, {{1, 2}}); }

}  // namespace qpmap::testkit

#endif  // QPMAP_TESTS_FIXTURES_HPP
