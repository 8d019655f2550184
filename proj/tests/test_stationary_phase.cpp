/** \file test_stationary_phase.cpp
 *  \brief Oscillatory integrals: exact 1-D reference, expansion error orders,
 *         and validation of phases, fixtures and resolution guards.
 */

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "evspec/stationary_phase.hpp"

using namespace evspec;

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double lx = std::log(x[j]);
        const double ly = std::log(y[j]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SmoothCompactFunction plain_gaussian_1d(double box) {
    SmoothCompactFunction f;
    f.n = 1;
    f.value = [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2.0); };
    f.lo = {-box, -box};
    f.hi = {box, box};
    return f;
}

}  // namespace

TEST_CASE("quadratic phase construction and invariants") {
    const auto p1 = QuadraticPhase::from_entries(1, std::array<double, 1>{2.0});
    CHECK(p1.dim() == 1);
    CHECK(p1.signature() == 1);
    CHECK(p1.B()(0, 0) == doctest::Approx(0.5).epsilon(1e-14));

    const auto pneg = QuadraticPhase::from_entries(1, std::array<double, 1>{-3.0});
    CHECK(pneg.signature() == -1);

    const auto p2 = QuadraticPhase::from_entries(2, std::array<double, 4>{1.0, 0.0, 0.0, 1.0});
    CHECK(p2.signature() == 2);
    const auto psaddle = QuadraticPhase::from_entries(2, std::array<double, 4>{2.0, 1.0, 1.0, -3.0});
    CHECK(psaddle.signature() == 0);
    CHECK(psaddle.A().inverse_residual(psaddle.B()) <= 1e-12);

    CHECK_THROWS_AS(QuadraticPhase(SymMat::from_entries(1, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticPhase::from_entries(2, std::array<double, 4>{2.0, 1.0, 1.0 + 1e-6, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QuadraticPhase::from_entries(2, std::array<double, 2>{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("fixture plateau semantics and validation") {
    const auto f = gaussian_plateau_fixture(1, 2.0, 4.0);
    const std::vector<double> x0{0.0}, xp{1.5}, xm{3.0}, xs{4.0};
    CHECK(f(x0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f(xp) == doctest::Approx(std::exp(-1.5 * 1.5 / 2.0)).epsilon(1e-14));
    CHECK(f(xs) == 0.0);
    CHECK(f(xm) > 0.0);
    CHECK(f(xm) < std::exp(-3.0 * 3.0 / 2.0) + 1e-12);

    CHECK_THROWS_AS(gaussian_plateau_fixture(3, 2.0, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_plateau_fixture(1, 4.0, 2.0), std::invalid_argument);
}

TEST_CASE("1-D oscillatory integral matches the closed form") {
    // integral of exp(-x^2/2) exp(i x^2 / 2h) dx = sqrt(2 pi / (1 - i/h)).
    const auto phase = QuadraticPhase::from_entries(1, std::array<double, 1>{1.0});
    const auto f = plain_gaussian_1d(20.0);  // tails ~ 1e-87: compact in effect
    const double h = 1.0;
    const std::complex<double> exact =
        std::sqrt(2.0 * std::numbers::pi / std::complex<double>(1.0, -1.0 / h));
    const auto got = oscillatory_integral(phase, f, h);
    CHECK(std::abs(got - exact) <= 1e-12 * std::abs(exact));
}

TEST_CASE("expansion error orders h^(n/2 + T) in one dimension") {
    const auto phase = QuadraticPhase::from_entries(1, std::array<double, 1>{1.0});
    const auto f = gaussian_plateau_fixture(1, 6.0, 9.0);
    const std::vector<double> hs{0.1, 0.05, 0.025, 0.0125};

    std::array<std::vector<double>, 3> errs;
    for (const double h : hs) {
        const auto osc = oscillatory_integral(phase, f, h);
        for (int terms = 1; terms <= 3; ++terms)
            errs[static_cast<std::size_t>(terms - 1)].push_back(
                std::abs(osc - sp_asymptotic(phase, f, h, terms)));
    }
    // Frozen slopes 1.4984 / 2.4983 / 3.5019 against predictions T + 1/2.
    for (int terms = 1; terms <= 3; ++terms) {
        const double predicted = 0.5 + terms;
        const double slope = loglog_slope(hs, errs[static_cast<std::size_t>(terms - 1)]);
        CHECK(std::abs(slope - predicted) <= 0.2);
    }
}

TEST_CASE("two-dimensional expansion error factors at h = 0.1") {
    const auto phase = QuadraticPhase::from_entries(2, std::array<double, 4>{1.0, 0.0, 0.0, 1.0});
    const auto f = gaussian_plateau_fixture(2, 4.5, 6.5);
    const auto osc = oscillatory_integral(phase, f, 0.1);
    // Leading prefactor (2 pi h) e^{i pi/2} f(0): mostly imaginary and ~0.63.
    CHECK(std::abs(osc) == doctest::Approx(2.0 * std::numbers::pi * 0.1).epsilon(0.1));
    CHECK(std::abs(osc - sp_asymptotic(phase, f, 0.1, 1)) <= 0.12 * std::abs(osc));
    CHECK(std::abs(osc - sp_asymptotic(phase, f, 0.1, 2)) <= 0.015 * std::abs(osc));
}

TEST_CASE("resolution guard and argument validation") {
    const auto phase = QuadraticPhase::from_entries(1, std::array<double, 1>{1.0});
    const auto f = gaussian_plateau_fixture(1, 6.0, 9.0);
    CHECK_THROWS_AS(oscillatory_integral(phase, f, 1e-9, 1000), std::runtime_error);
    CHECK_THROWS_AS(oscillatory_integral(phase, f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sp_asymptotic(phase, f, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(sp_asymptotic(phase, f, 0.1, 4), std::invalid_argument);

    const auto f2 = gaussian_plateau_fixture(2, 4.5, 6.5);
    CHECK_THROWS_AS(oscillatory_integral(phase, f2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(sp_asymptotic(phase, f2, 0.1, 1), std::invalid_argument);
}
