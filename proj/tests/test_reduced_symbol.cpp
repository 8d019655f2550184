/** \file test_reduced_symbol.cpp
 *  \brief Reduced symbols: closed-form sub-level volumes, push-forward
 *         densities, smeared integrals, and domain validation.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "evspec/reduced_symbol.hpp"

using namespace evspec;

namespace {

ReducedSymbol round_symbol(double alpha = 1.0) {
    return toric_reduced_symbol(SymplecticPotential::canonical(LabeledPolytope::interval()),
                                {alpha});
}

ReducedSymbol oscillator_symbol(double alpha = 1.0) {
    OrthantPotential V;
    V.n = 1;
    V.value = [](std::span<const double> s) { return s[0]; };
    return schrodinger_reduced_symbol(V, {alpha});
}

}  // namespace

TEST_CASE("symbol construction rejects degenerate weights") {
    CHECK_THROWS_AS(round_symbol(0.0), std::invalid_argument);
    OrthantPotential V;
    V.n = 1;
    V.value = [](std::span<const double> s) { return s[0]; };
    CHECK_THROWS_AS(schrodinger_reduced_symbol(V, {0.0}), std::invalid_argument);
}

TEST_CASE("pointwise evaluation and base values") {
    const auto sym = round_symbol();
    CHECK(sym.kind() == SymbolKind::toric);
    CHECK(sym.n() == 1);

    const std::vector<double> x0{0.0}, u0{0.0}, u2{2.0};
    // H(0) = 1 for the canonical interval potential, so p(0,u) = u^2 + 1.
    CHECK(sym.base_value(x0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sym(x0, u0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sym(x0, u2) == doctest::Approx(5.0).epsilon(1e-14));

    const std::vector<double> boundary{1.0};
    CHECK_THROWS_AS(sym(boundary, u0), std::domain_error);

    const auto rad = oscillator_symbol();
    const std::vector<double> r1{1.0};
    // p(1, u) = u^2 + 1/1 + 1, minimized value 2.
    CHECK(rad.base_value(r1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rad(r1, u2) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS(rad.metric(r1));  // no metric Hessian for the radial kind
}

TEST_CASE("sub-level volumes match closed forms") {
    // Round symbol, alpha = 1: volume of {u^2(1-x^2) + 1/(1-x^2) <= 4} is 2*pi.
    CHECK(sublevel_volume(round_symbol(), 4.0) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    // Radial oscillator, alpha = 1: volume of {u^2 + 1/r^2 + r^2 <= E} is
    // (pi/2)(E - 2); at E = 4 this is pi.
    CHECK(sublevel_volume(oscillator_symbol(), 4.0) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("sub-level volume rejects improper symbols, naming the level") {
    OrthantPotential V;
    V.n = 1;
    V.value = [](std::span<const double>) { return 0.0; };
    const auto sym = schrodinger_reduced_symbol(V, {1.0});
    try {
        (void)sublevel_volume(sym, 4.0);
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
}

TEST_CASE("push-forward density differentiates the volume function") {
    const auto sym = oscillator_symbol();
    const double t0 = 1.5, dt = 0.05;
    const auto den = pushforward_density(sym, t0, dt, 31);
    CHECK(den.q.x0 == doctest::Approx(t0));
    CHECK(den.q.dx == doctest::Approx(dt));
    REQUIRE(den.q.values.size() == 31);

    // Below the symbol minimum (p >= 2 everywhere) the density vanishes.
    CHECK(den.q.values.front() == 0.0);

    // Interior nodes agree with a centered difference of the volume at the
    // same spacing.  Exact density here is pi/2 for t >= 2.
    for (const std::size_t j : {std::size_t{14}, std::size_t{22}}) {
        const double t = t0 + dt * static_cast<double>(j);
        const double fd =
            (sublevel_volume(sym, t + dt) - sublevel_volume(sym, t - dt)) / (2.0 * dt);
        CHECK(den.q.values[j] == doctest::Approx(fd).epsilon(1e-6));
        CHECK(den.q.values[j] == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-3));
    }
}

TEST_CASE("smeared integral against a window matches the frozen reference") {
    const TestFunction rho(1.5, 3.5);
    CHECK(rho.support_lo() == doctest::Approx(1.5));
    CHECK(rho.support_hi() == doctest::Approx(3.5));
    CHECK(rho(1.5) == 0.0);
    CHECK(rho(2.5) > 0.0);

    // Frozen reference for the round symbol, alpha = 1 (independent
    // density-integral cross-check agrees to 7.5e-10).
    CHECK(smeared_measure(round_symbol(), rho) == doctest::Approx(2.4217053946).epsilon(1e-8));
}
