/** \file test_polygon_recon.cpp
 *  \brief Heat integrals against a 1-D reference, facet detection across
 *         polygon shapes, and the sign-search reconstruction with its
 *         repair and failure paths.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "evspec/polygon_recon.hpp"
#include "evspec/quadrature.hpp"

using namespace evspec;

namespace {

// Independent reference for the canonical rectangle [0,a]x[0,b] at u = (1,0):
// the fiber is exact there, I(t,u) = b * int_0^a exp(-t x (a-x)/a) dx.
double rect_reference(double a, double b, double t) {
    const auto edges = graded_edges_both(std::min(0.25, 4.0 / t), 2.0);
    const auto& gl = GaussLegendre::get(40);
    std::vector<double> terms;
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        const double lo = a * edges[c], hi = a * edges[c + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double x = mid + half * gl.nodes[q];
            terms.push_back(half * gl.weights[q] * std::exp(-t * x * (a - x) / a));
        }
    }
    return b * pairwise_sum(std::move(terms));
}

HeatOracle oracle_of(const SymplecticPotential& pot) {
    return [&pot](std::span<const double> u, double t) { return heat_integral(pot, u, t); };
}

const FacetSignature* find_normal(const std::vector<FacetSignature>& sigs, std::int64_t a,
                                  std::int64_t b) {
    for (const auto& s : sigs)
        if (s.normal[0] == a && s.normal[1] == b) return &s;
    return nullptr;
}

double best_distance(const std::pair<Polygon, Polygon>& rec, const Polygon& truth) {
    return std::min(vertex_distance(rec.first, truth), vertex_distance(rec.second, truth));
}

LabeledPolytope generic_triangle() {
    return LabeledPolytope(2, {{{1, 0}, 1, 0.0}, {{0, 1}, 1, 0.0}, {{-2, -3}, 1, -6.0}});
}

LabeledPolytope quad_fixture() {
    return LabeledPolytope(
        2, {{{1, 0}, 1, 0.0}, {{0, 1}, 1, 0.0}, {{-1, -2}, 1, -3.0}, {{-2, -1}, 1, -3.0}});
}

}  // namespace

TEST_CASE("heat integral agrees with the 1-D reference on the rectangle") {
    const auto rect = SymplecticPotential::canonical(LabeledPolytope::rectangle(1.0, 2.0));
    const std::vector<double> ex{1.0, 0.0};
    for (const double t : {16.0, 4096.0}) {
        const double ref = rect_reference(1.0, 2.0, t);
        CHECK(heat_integral(rect, ex, t) == doctest::Approx(ref).epsilon(1e-12));
    }

    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(heat_integral(rect, zero, 16.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_integral(rect, ex, 0.0), std::invalid_argument);
    const auto interval = SymplecticPotential::canonical(LabeledPolytope::interval());
    CHECK_THROWS_AS(heat_integral(interval, ex, 16.0), std::invalid_argument);
}

TEST_CASE("t*I(t,u) separates facet directions from the rest") {
    const auto simplex = SymplecticPotential::canonical(LabeledPolytope::unit_simplex());
    const std::vector<double> facet_dir{1.0, 0.0};
    const std::vector<double> other_dir{2.0, -1.0};

    double prev = 1e300;
    for (const double t : default_t_schedule()) {
        const double ti = t * heat_integral(simplex, facet_dir, t);
        CHECK(ti <= prev);  // the boundary-layer excess only shrinks with t
        prev = ti;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(5e-4));  // frozen 1.000122

    CHECK(16384.0 * heat_integral(simplex, other_dir, 16384.0) <= 1e-3);  // frozen 2.4e-5
}

TEST_CASE("t schedule is the documented geometric ladder") {
    const auto sched = default_t_schedule();
    REQUIRE(sched.size() == 11);
    CHECK(sched.front() == doctest::Approx(16.0));
    CHECK(sched.back() == doctest::Approx(16384.0));
    for (std::size_t j = 0; j + 1 < sched.size(); ++j)
        CHECK(sched[j + 1] == doctest::Approx(2.0 * sched[j]));
}

TEST_CASE("facet detection on the unit simplex") {
    const auto pot = SymplecticPotential::canonical(LabeledPolytope::unit_simplex());
    const auto sched = default_t_schedule();
    const auto det = detect_facets(oracle_of(pot), 2, sched, std::sqrt(2.0));
    CHECK(det.undecided.empty());
    REQUIRE(det.signatures.size() == 3);
    for (const auto normal : {std::array<std::int64_t, 2>{1, 0}, std::array<std::int64_t, 2>{0, 1},
                              std::array<std::int64_t, 2>{1, 1}}) {
        const auto* s = find_normal(det.signatures, normal[0], normal[1]);
        REQUIRE(s != nullptr);
        CHECK(s->lattice_volume == doctest::Approx(1.0).epsilon(1e-6));
    }

    // Reconstruction from the detected signatures closes on the truth.
    const auto truth = polygon_of(LabeledPolytope::unit_simplex());
    CHECK(best_distance(minkowski_polygon(det.signatures), truth) <= 1e-6);

    CHECK_THROWS_AS(detect_facets(oracle_of(pot), 0, sched, 1.0), std::invalid_argument);
    const std::vector<double> short_sched{16.0, 32.0, 64.0};
    CHECK_THROWS_AS(detect_facets(oracle_of(pot), 2, short_sched, 1.0), std::invalid_argument);
}

TEST_CASE("facet detection resolves labels and translations") {
    // Label-2 hypotenuse: lattice volume doubles.
    const LabeledPolytope tri2(2, {{{1, 0}, 1, 0.0}, {{0, 1}, 1, 0.0}, {{-1, -1}, 2, -2.0}});
    const auto ex_sigs = exact_signatures(tri2);
    const auto* hyp = find_normal(ex_sigs, 1, 1);
    REQUIRE(hyp != nullptr);
    CHECK(hyp->lattice_volume == doctest::Approx(2.0).epsilon(1e-12));

    const auto pot = SymplecticPotential::canonical(tri2);
    const auto det = detect_facets(oracle_of(pot), 2, default_t_schedule(), tri2.diameter());
    CHECK(det.undecided.empty());
    REQUIRE(det.signatures.size() == 3);
    for (const auto& s : ex_sigs) {
        const auto* d = find_normal(det.signatures, s.normal[0], s.normal[1]);
        REQUIRE(d != nullptr);
        CHECK(d->lattice_volume == doctest::Approx(s.lattice_volume).epsilon(1e-6));
    }

    // Translating the polygon leaves the heat integral unchanged.
    const auto tri = generic_triangle();
    // Shift by (2,-1): each offset picks up eta . (2,-1).
    const LabeledPolytope shifted(
        2, {{{1, 0}, 1, 2.0}, {{0, 1}, 1, -1.0}, {{-2, -3}, 1, -6.0 - 1.0}});
    const auto p0 = SymplecticPotential::canonical(tri);
    const auto p1 = SymplecticPotential::canonical(shifted);
    const std::vector<double> ex{1.0, 0.0};
    for (const double t : {64.0, 4096.0}) {
        const double a = heat_integral(p0, ex, t);
        CHECK(heat_integral(p1, ex, t) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("end-to-end reconstruction of the asymmetric quadrilateral") {
    const auto Q = quad_fixture();
    const auto pot = SymplecticPotential::canonical(Q);
    const auto det = detect_facets(oracle_of(pot), 3, default_t_schedule(), Q.diameter());
    CHECK(det.undecided.empty());
    REQUIRE(det.signatures.size() == 4);
    const struct {
        std::array<std::int64_t, 2> normal;
        double vol;
    } expected[] = {{{1, 0}, 1.5}, {{0, 1}, 1.5}, {{1, 2}, 0.5}, {{2, 1}, 0.5}};
    for (const auto& e : expected) {
        const auto* s = find_normal(det.signatures, e.normal[0], e.normal[1]);
        REQUIRE(s != nullptr);
        CHECK(s->lattice_volume == doctest::Approx(e.vol).epsilon(1e-6));
    }
    CHECK(best_distance(minkowski_polygon(det.signatures), polygon_of(Q)) <= 1e-9);

    // With the scan bound below |(1,2)| the oblique facets are invisible and
    // reconstruction must refuse to run on two classes.
    const auto det2 = detect_facets(oracle_of(pot), 2, default_t_schedule(), Q.diameter());
    REQUIRE(det2.signatures.size() == 2);
    CHECK_THROWS_AS(minkowski_polygon(det2.signatures), std::invalid_argument);
}

TEST_CASE("end-to-end reconstruction of a generic lattice triangle") {
    const auto T = generic_triangle();
    const auto pot = SymplecticPotential::canonical(T);
    const auto det = detect_facets(oracle_of(pot), 4, default_t_schedule(), T.diameter());
    CHECK(det.undecided.empty());
    REQUIRE(det.signatures.size() == 3);
    const struct {
        std::array<std::int64_t, 2> normal;
        double vol;
    } expected[] = {{{1, 0}, 2.0}, {{0, 1}, 3.0}, {{2, 3}, 1.0}};
    for (const auto& e : expected) {
        const auto* s = find_normal(det.signatures, e.normal[0], e.normal[1]);
        REQUIRE(s != nullptr);
        CHECK(s->lattice_volume == doctest::Approx(e.vol).epsilon(1e-9));
    }
    CHECK(best_distance(minkowski_polygon(det.signatures), polygon_of(T)) <= 1e-9);
}

TEST_CASE("opposite facets cannot be separated: the rectangle is rejected") {
    const auto R = LabeledPolytope::rectangle(1.0, 2.0);
    CHECK_THROWS_AS(minkowski_polygon(exact_signatures(R)), std::invalid_argument);

    const auto pot = SymplecticPotential::canonical(R);
    const auto det = detect_facets(oracle_of(pot), 2, default_t_schedule(), R.diameter());
    REQUIRE(det.signatures.size() == 2);  // the +-pairs merge
    CHECK_THROWS_AS(minkowski_polygon(det.signatures), std::invalid_argument);
}

TEST_CASE("an oracle that never settles lands in the undecided bin") {
    HeatOracle bad = [](std::span<const double>, double t) {
        return (1.0 + 0.5 * std::sin(3.0 * std::log(t))) / t;
    };
    const auto det = detect_facets(bad, 1, default_t_schedule(), 1.0);
    CHECK(det.signatures.empty());
    CHECK(det.undecided.size() == 2);
}

TEST_CASE("closure repair absorbs small volume errors and rejects large ones") {
    auto sigs = exact_signatures(LabeledPolytope::unit_simplex());
    sigs[0].lattice_volume *= 1.02;
    const auto rec = minkowski_polygon(sigs);
    const auto truth = polygon_of(LabeledPolytope::unit_simplex());
    CHECK(best_distance(rec, truth) <= 1e-2);  // frozen 3.7e-3
    CHECK(rec.first.area() == doctest::Approx(0.5).epsilon(0.02));

    sigs[0].lattice_volume = 10.0;
    CHECK_THROWS_AS(minkowski_polygon(sigs), std::runtime_error);
}

TEST_CASE("polygon helpers: area, centroid, cyclic distance") {
    const auto S = polygon_of(LabeledPolytope::unit_simplex());
    CHECK(S.area() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(S.centroid()[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(S.centroid()[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto Q = polygon_of(quad_fixture());
    CHECK(Q.area() == doctest::Approx(1.5).epsilon(1e-12));

    // Cyclic relabeling does not change the distance.
    Polygon rotated{{Q.vertices[2], Q.vertices[3], Q.vertices[0], Q.vertices[1]}};
    CHECK(vertex_distance(Q, rotated) <= 1e-12);

    Polygon tri{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
    CHECK(std::isinf(vertex_distance(Q, tri)));
}
