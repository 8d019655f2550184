/** \file test_small_linalg.cpp
 *  \brief Closed-form checks of the tiny symmetric matrix type against
 *         hand-computed values.
 */

#include <array>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "evspec/small_linalg.hpp"

using namespace evspec;

TEST_CASE("SymMat factories and entry access") {
    const auto id = SymMat::identity(2);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(id(1, 1) == 1.0);
    CHECK(SymMat::zero(2).trace() == 0.0);

    const auto m = SymMat::from_entries(2, 3.0, -1.0, 2.0);
    CHECK(m(0, 1) == m(1, 0));  // stored symmetric
    CHECK(m.trace() == 5.0);
    CHECK(m.det() == doctest::Approx(5.0));  // 3*2 - 1
}

TEST_CASE("SymMat inverse is exact on hand examples and validated") {
    const auto m = SymMat::from_entries(2, 4.0, 1.0, 3.0);  // det 11
    const auto inv = m.inverse();
    CHECK(inv(0, 0) == doctest::Approx(3.0 / 11.0).epsilon(1e-14));
    CHECK(inv(0, 1) == doctest::Approx(-1.0 / 11.0).epsilon(1e-14));
    CHECK(inv(1, 1) == doctest::Approx(4.0 / 11.0).epsilon(1e-14));
    CHECK(m.inverse_residual(inv) <= 1e-14);

    const auto one = SymMat::from_entries(1, 2.5);
    CHECK(one.inverse()(0, 0) == doctest::Approx(0.4).epsilon(1e-15));

    CHECK_THROWS_AS(SymMat::from_entries(2, 1.0, 1.0, 1.0).inverse(), std::domain_error);
    CHECK_THROWS_AS(SymMat::zero(1).inverse(), std::domain_error);
}

TEST_CASE("SymMat eigenvalue extremes and signature") {
    // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
    const auto m = SymMat::from_entries(2, 2.0, 1.0, 2.0);
    CHECK(m.min_eigenvalue() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.signature() == 2);

    const auto indefinite = SymMat::from_entries(2, 1.0, 0.0, -2.0);
    CHECK(indefinite.signature() == 0);
    CHECK(indefinite.min_eigenvalue() == doctest::Approx(-2.0));

    CHECK(SymMat::from_entries(1, -3.0).signature() == -1);
}

TEST_CASE("SymMat quadratic form and matrix-vector product") {
    const auto m = SymMat::from_entries(2, 2.0, -1.0, 4.0);
    const std::array<double, 2> v{1.0, 2.0};
    // v^T M v = 2*1 - 2*1*2*1 + 4*4 = 14.
    CHECK(m.quad_form(v) == doctest::Approx(14.0).epsilon(1e-15));
    const auto mv = m.mul(v);
    CHECK(mv[0] == doctest::Approx(0.0));
    CHECK(mv[1] == doctest::Approx(7.0));
}

TEST_CASE("asymmetry flags raw input that is not symmetric") {
    const std::array<double, 4> sym{1.0, 2.0, 2.0, 5.0};
    const std::array<double, 4> skew{1.0, 2.0, 2.0 + 1e-6, 5.0};
    CHECK(SymMat::asymmetry(2, sym) == 0.0);
    CHECK(SymMat::asymmetry(2, skew) == doctest::Approx(1e-6));
}

TEST_CASE("dot and norm2 on short spans") {
    const std::vector<double> x{3.0, 4.0};
    const std::vector<double> y{-1.0, 2.0};
    CHECK(dot(x, y) == doctest::Approx(5.0));
    CHECK(norm2(x) == doctest::Approx(5.0));
}
