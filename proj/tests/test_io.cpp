/** \file test_io.cpp
 *  \brief Serialization roundtrips are value-exact; malformed input fails
 *         with located errors.
 */

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "evspec/io.hpp"

using namespace evspec;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("format_double round-trips IEEE doubles exactly") {
    for (const double x : {std::numbers::pi, 1.0 / 3.0, 1e-300, 6.62607015e-34, -2.5e-3,
                           0.1 + 0.2, 1.0, -0.0, 12345678901234567.0}) {
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("polytope JSON interchange") {
    const LabeledPolytope tri(2, {{{1, 0}, 1, 0.25}, {{0, 1}, 1, 0.0}, {{-1, -1}, 2, -2.0}});
    std::stringstream ss;
    write_polytope(ss, tri);
    const auto back = read_polytope(ss);
    CHECK(back.dimension() == 2);
    REQUIRE(back.facet_count() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.facets()[i].eta0 == tri.facets()[i].eta0);
        CHECK(back.facets()[i].label == tri.facets()[i].label);
        CHECK(back.facets()[i].offset == tri.facets()[i].offset);
    }

    std::stringstream bad("{ not json");
    CHECK_THROWS_AS(read_polytope(bad), std::runtime_error);
    std::stringstream missing(R"({"n": 2, "facets": [{"label": 1, "offset": 0.0}]})");
    CHECK_THROWS_AS(read_polytope(missing), std::runtime_error);
}

TEST_CASE("density CSV carries the grid and the seed") {
    DensityGrid den{GridFunction{0.5, 0.25, {0.0, 0.1, std::numbers::pi, 0.3}}, 20260814};
    std::stringstream ss;
    write_density_csv(ss, den);
    CHECK(ss.str().rfind("# seed = 20260814\n", 0) == 0);
    const auto back = read_density_csv(ss);
    CHECK(back.seed == den.seed);
    CHECK(back.q.x0 == den.q.x0);
    CHECK(back.q.dx == den.q.dx);
    CHECK(back.q.values == den.q.values);

    std::stringstream bad("# seed = 1\nt,q\n0,0\nabc,1\n");
    try {
        (void)read_density_csv(bad);
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
}

TEST_CASE("spectrum CSV keeps eigenvalues and solver metadata") {
    EquivariantSpectrum spec{1.0, 0.01, {1.01, 1.0302, 1.0506000000000002}};
    std::stringstream ss;
    write_spectrum_csv(ss, spec, 2000, 1e-14);
    const auto rec = read_spectrum_csv(ss);
    CHECK(rec.spectrum.alpha == spec.alpha);
    CHECK(rec.spectrum.h == spec.h);
    CHECK(rec.spectrum.eigenvalues == spec.eigenvalues);
    CHECK(rec.grid == 2000);
    CHECK(rec.eps == 1e-14);

    std::stringstream ss2;
    write_spectrum_csv(ss2, spec, 2000, 1e-14);
    std::stringstream tampered(replace_once(ss2.str(), ",1\n", ",2\n"));
    try {
        (void)read_spectrum_csv(tampered);
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("multiplicity") != std::string::npos);
    }
}

TEST_CASE("minimum-function CSV round-trips both arities") {
    MinFunction mf1{1, {0.5, 1.0, 1.5}, {}, {1.0, 2.0, 3.0}};
    std::stringstream s1;
    write_min_function_csv(s1, mf1);
    const auto b1 = read_min_function_csv(s1);
    CHECK(b1.n == 1);
    CHECK(b1.alpha1 == mf1.alpha1);
    CHECK(b1.m == mf1.m);

    MinFunction mf2{2, {0.5, 1.0}, {0.25, 0.75, 1.25}, {1, 2, 3, 4, 5, 6}};
    std::stringstream s2;
    write_min_function_csv(s2, mf2);
    const auto b2 = read_min_function_csv(s2);
    CHECK(b2.n == 2);
    CHECK(b2.alpha1 == mf2.alpha1);
    CHECK(b2.alpha2 == mf2.alpha2);
    CHECK(b2.m == mf2.m);

    // Remove one row: the tensor structure no longer tiles.
    std::stringstream s3;
    write_min_function_csv(s3, mf2);
    std::string text = s3.str();
    text.erase(text.rfind("1,1.25,6"));
    std::stringstream broken(text);
    CHECK_THROWS_AS(read_min_function_csv(broken), std::runtime_error);
}

TEST_CASE("recovery CSV lists the dual point for each sample") {
    MinFunction mf{1, {0.5, 1.0, 1.5}, {}, {1.0, 2.0, 3.0}};
    RecoveredPotential rec{1, {0.8, 1.2}, {}, {0.64, 1.44}, {1, 2}};
    std::stringstream ss;
    write_recovery_csv(ss, rec, mf);
    const std::string text = ss.str();
    CHECK(text.rfind("# n = 1\n", 0) == 0);
    CHECK(text.find("s1,V,a1\n") != std::string::npos);
    // a1 = alpha1[argmax]^2: 1 and 2.25.
    CHECK(text.find("0.80000000000000004,0.64000000000000001,1\n") != std::string::npos);
    CHECK(text.find("2.25\n") != std::string::npos);
}

TEST_CASE("Abel CSV keeps the shift constant and the weight") {
    AbelPair pair{GridFunction{0.25, 0.25, {0.1, 0.2, 0.3, 0.4}}, 1.00125, 1.0};
    std::stringstream ss;
    write_abel_csv(ss, pair);
    const auto back = read_abel_csv(ss);
    CHECK(back.c == pair.c);
    CHECK(back.alpha == pair.alpha);
    CHECK(back.D.x0 == pair.D.x0);
    CHECK(back.D.dx == pair.D.dx);
    CHECK(back.D.values == pair.D.values);
}

TEST_CASE("signature CSV round-trips integers and volumes exactly") {
    const auto sigs = exact_signatures(LabeledPolytope(
        2, {{{1, 0}, 1, 0.0}, {{0, 1}, 1, 0.0}, {{-1, -2}, 1, -3.0}, {{-2, -1}, 1, -3.0}}));
    std::stringstream ss;
    write_signatures_csv(ss, sigs);
    const auto back = read_signatures_csv(ss);
    REQUIRE(back.size() == sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        CHECK(back[i].normal == sigs[i].normal);
        CHECK(back[i].lattice_volume == sigs[i].lattice_volume);
    }

    std::stringstream bad("eta_x,eta_y,lattice_volume\n1,0\n");
    try {
        (void)read_signatures_csv(bad);
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("polygon CSV lists the vertex loop") {
    Polygon tri{{{0.0, 0.0}, {1.5, 0.0}, {0.0, 1.5}}};
    std::stringstream ss;
    write_polygon_csv(ss, tri);
    CHECK(ss.str().find("x,y\n") != std::string::npos);
    CHECK(ss.str().find("1.5,0\n") != std::string::npos);
}

TEST_CASE("trace-sample CSV is value-exact in both parts") {
    std::vector<TraceSample> samples{{1, {-2.0, 0.0}},
                                     {2, {0.25, -std::numbers::pi}},
                                     {30, {3.0000000000000004, 1e-17}}};
    std::stringstream ss;
    write_samples_csv(ss, samples);
    const auto back = read_samples_csv(ss);
    REQUIRE(back.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(back[i].N == samples[i].N);
        CHECK(back[i].value == samples[i].value);
    }
}

TEST_CASE("file helpers name the offending path") {
    try {
        (void)open_input("/no/such/evspec/file.csv");
        FAIL("expected std::runtime_error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/no/such/evspec/file.csv") != std::string::npos);
    }
    CHECK_THROWS_AS(write_file("/no/such/dir/out.csv", [](std::ostream& os) { os << "x\n"; }),
                    std::runtime_error);

    const auto path =
        (std::filesystem::temp_directory_path() / "evspec_io_test_roundtrip.csv").string();
    write_file(path, [](std::ostream& os) { os << "# seed = 7\nt,q\n0,1\n1,2\n"; });
    auto is = open_input(path);
    const auto den = read_density_csv(is);
    CHECK(den.seed == 7);
    CHECK(den.q.values == std::vector<double>{1.0, 2.0});
    std::remove(path.c_str());
}
