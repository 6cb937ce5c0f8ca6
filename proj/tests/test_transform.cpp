#include "qpmap/symplectic.hpp"
#include "qpmap/transform.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qpmap;
using namespace qpmap::testkit;

TEST(qmt, inverse_of_known_matrices) {
    EXPECT_EQ(QMT(RationalMatrix::identity(3)).c_inv(), RationalMatrix::identity(3));

    const QMT diag(RationalMatrix{{1, 0}, {0, 2}});
    EXPECT_EQ(diag.c_inv(), (RationalMatrix{{1, 0}, {0, ratio(1, 2)}}));

    const RationalMatrix involution{{1, 1}, {0, -1}};
    EXPECT_EQ(QMT(involution).c_inv(), involution);

    try {
        QMT(RationalMatrix{{1, 2}, {2, 4}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
    }
    EXPECT_THROW(QMT(RationalMatrix(2, 3)), Error);
}

TEST(qmt, solver_matrix_is_an_involution) {
    EXPECT_EQ(solver_qmt(1).c(), (RationalMatrix{{1, 1}, {0, -1}}));
    const RationalMatrix four{{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, -1, 0}, {0, 0, 0, -1}};
    EXPECT_EQ(solver_qmt(2).c(), four);
    for (std::size_t s = 1; s <= 8; ++s) {
        const QMT c = solver_qmt(s);
        EXPECT_EQ(c.c() * c.c(), RationalMatrix::identity(2 * s));
        EXPECT_EQ(c.c_inv(), c.c());
    }
}

TEST(apply_qmt, diag12_breaks_e1) {
    const QPMap out = apply_qmt(map_single_pair(), QMT(RationalMatrix{{1, 0}, {0, 2}}));
    EXPECT_EQ(out, map_diag12_image());
    const SymplecticReport r = check_theorem1(out);
    EXPECT_FALSE(r.is_symplectic);
    EXPECT_EQ(r.cond_d.verdict, Verdict::violated);
}

TEST(apply_qmt, identity_and_scaling) {
    EXPECT_EQ(apply_qmt(map_two_pairs(), QMT(RationalMatrix::identity(4))), map_two_pairs());

    const QPMap scaled3 = apply_qmt(map_single_pair(), QMT(scaled(RationalMatrix::identity(2), 3)));
    EXPECT_EQ(scaled3, QPMap::create({ratio(1, 3), ratio(-1, 3)}, {{ratio(2, 3)}, {ratio(-2, 3)}}, {{3, 3}}));
    EXPECT_TRUE(check_theorem1(scaled3).is_symplectic);
}

TEST(apply_qmt, dimension_mismatch) {
    EXPECT_THROW(apply_qmt(map_single_pair(), QMT(RationalMatrix::identity(3))), Error);
}

TEST(states, push_and_pull) {
    const QMT id(RationalMatrix::identity(2));
    EXPECT_EQ(push_state(id, State{2, 3}), (State{2, 3}));
    EXPECT_EQ(pull_state(id, State{2, 3}), (State{2, 3}));

    const QMT c(RationalMatrix{{1, 1}, {0, -1}});
    const State x = push_state(c, State{2, 3});
    EXPECT_NEAR(x[0], 6.0, 1e-14);
    EXPECT_NEAR(x[1], 1.0 / 3.0, 1e-16);
    const State y = pull_state(c, State{6, 1.0 / 3.0});
    EXPECT_NEAR(y[0], 2.0, 1e-14);
    EXPECT_NEAR(y[1], 3.0, 1e-14);

    const State y4 = pull_state(solver_qmt(2), State{1, 2, 3, 4});
    const std::vector<double> expected{3, 8, 1.0 / 3.0, 0.25};
    EXPECT_LT(max_relative_difference(y4.values(), expected), 1e-15);
    EXPECT_LT(max_relative_difference(push_state(solver_qmt(2), y4).values(), std::vector<double>{1, 2, 3, 4}), 1e-15);
}

TEST(states, round_trip_for_random_qmts) {
    Rng rng(4);
    const std::vector<Rational> values{-2, -1, ratio(-1, 2), 0, ratio(1, 2), 1, 2};
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
        const QMT c = random_qmt(rng, n, values);
        const State y = random_state(rng, n);
        EXPECT_LT(max_relative_difference(pull_state(c, push_state(c, y)).values(), y.values()), 1e-12);
    }
}

TEST(class_invariant, examples) {
    EXPECT_EQ(class_invariant(map_single_pair()), RationalMatrix(1, 2));
    EXPECT_EQ(class_invariant(map_two_pairs()), RationalMatrix(5, 6));
    EXPECT_EQ(class_invariant(map_unequal_exponents()), (RationalMatrix{{-1, -2}}));
}

TEST(class_invariant, preserved_by_random_qmts_and_group_law) {
    Rng rng(6);
    const std::vector<Rational> values{-2, -1, ratio(-1, 2), 0, ratio(1, 2), 1, 2};
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const QPMap map = random_map(rng, n, m, integer_range(-3, 3));
        const QMT c1 = random_qmt(rng, n, values);
        const QMT c2 = random_qmt(rng, n, values);
        const QPMap once = apply_qmt(map, c1);
        EXPECT_EQ(class_invariant(once), class_invariant(map));
        EXPECT_EQ(apply_qmt(once, c2), apply_qmt(map, QMT(c1.c() * c2.c())));
    }
}

TEST(class_invariant, null_for_symplectic_maps) {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        EXPECT_TRUE(class_invariant(random_symplectic_map(rng)).is_zero());
    }
}

TEST(apply_qmt, conjugacy_of_steps) {
    Rng rng(10);
    const std::vector<Rational> values{-2, -1, ratio(-1, 2), 0, ratio(1, 2), 1, 2};
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        const QPMap map = random_map(rng, n, m, half_steps());
        const QMT c = random_qmt(rng, n, values);
        const QPMap image = apply_qmt(map, c);
        const State x = random_state(rng, n);
        const State lhs = step(image, pull_state(c, x));
        const State rhs = pull_state(c, step(map, x));
        EXPECT_LT(max_relative_difference(lhs.values(), rhs.values()), 1e-9) << "trial " << trial;
    }
}

TEST(apply_qmt, scaling_preserves_symplectic_verdict) {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = static_cast<std::size_t>(uniform_int(rng, 1, 3));
        const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 5));
        const QPMap map = trial % 2 == 0 ? random_symplectic_map(rng, s, m) : near_symplectic_map(rng, s, m, 1);
        const Rational mu = nonzero_rational(rng, 5, 7);
        const QPMap image = apply_qmt(map, QMT(scaled(RationalMatrix::identity(2 * s), mu)));
        EXPECT_EQ(check_theorem1(image).is_symplectic, check_theorem1(map).is_symplectic);
    }
}

TEST(apply_qmt, solver_transform_zero_blocks) {
    Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        const QPMap map = random_symplectic_map(rng);
        const std::size_t s = map.n() / 2;
        const QPMap image = apply_qmt_relaxed(map, solver_qmt(s));
        const RationalMatrix m_prime = image.m_matrix();
        for (std::size_t j = 0; j < image.m(); ++j)
            for (std::size_t k = s; k < 2 * s; ++k) EXPECT_TRUE(is_zero(image.b()(j, k)));
        for (std::size_t i = 0; i < s; ++i)
            EXPECT_TRUE(m_prime.row_is_zero(i));
        // Lower block of M' reproduces the upper block of M.
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t c = 0; c < m_prime.cols(); ++c) EXPECT_EQ(m_prime(s + i, c), map.m_matrix()(i, c));
    }
}

TEST(lv_canonical, symplectic_maps_are_degenerate) {
    for (const QPMap& map : {map_single_pair(), map_two_pairs()}) {
        try {
            lv_canonical(map);
            FAIL();
        } catch (const DegenerateResultError& e) {
            EXPECT_EQ(e.code(), ErrorCode::DegenerateResult);
            EXPECT_TRUE(e.raw().m_matrix().is_zero());
            EXPECT_EQ(e.raw().b(), RationalMatrix::identity(map.m()));
        }
    }
}

TEST(lv_canonical, identity_b_is_a_fixed_point) {
    const QPMap lv = lotka_volterra({1, 0}, RationalMatrix::identity(2));
    EXPECT_EQ(lv_canonical(lv), lv);

    const QPMap map = QPMap::create({1, 2}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}});
    const QPMap canon = lv_canonical(map);
    EXPECT_EQ(canon.n(), 2u);
    EXPECT_EQ(canon.b(), RationalMatrix::identity(2));
    EXPECT_EQ(canon.m_matrix(), class_invariant(map));
    EXPECT_EQ(canon.m_matrix(), (RationalMatrix{{3, 2, 1}, {2, 1, 1}}));
}
