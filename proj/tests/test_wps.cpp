/** \file test_wps.cpp
 *  \brief Weighted circle actions: isotropy bookkeeping, exact trace-sum
 *         symmetries, and prime-weight recovery with its diagnostics.
 */

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "evspec/wps.hpp"

using namespace evspec;

namespace {

std::vector<TraceSample> sample_range(const WeightVector& w, const std::vector<double>& c,
                                      std::int64_t n_max) {
    std::vector<TraceSample> out;
    for (std::int64_t n = 1; n <= n_max; ++n) out.push_back({n, trace_sum(w, c, n)});
    return out;
}

}  // namespace

TEST_CASE("weight vector validation and period") {
    CHECK(WeightVector({2, 3, 5}).period() == 30);
    CHECK(WeightVector({2, 3}).count() == 2);
    CHECK_THROWS_AS(WeightVector({2}), std::invalid_argument);         // d < 2
    CHECK_THROWS_AS(WeightVector({2, 4}), std::invalid_argument);      // composite
    CHECK_THROWS_AS(WeightVector({3, 3}), std::invalid_argument);      // duplicate
    CHECK_THROWS_AS(WeightVector({2, -3}), std::invalid_argument);     // not prime
    // Product of many large primes overflows 64 bits.
    CHECK_THROWS_AS(WeightVector({2147483647, 2147483629, 2147483587}), std::invalid_argument);
}

TEST_CASE("isotropy enumeration is lexicographic with sum(m_k - 1) entries") {
    const WeightVector w({2, 3, 5});
    const auto pairs = isotropy_list(w);
    REQUIRE(pairs.size() == 7);
    const IsotropyPair expected[] = {{0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {2, 4}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(pairs[i].k == expected[i].k);
        CHECK(pairs[i].s == expected[i].s);
    }
}

TEST_CASE("normal rotation determinants: hand values and guards") {
    const WeightVector w({2, 3, 5});
    CHECK(normal_rotation_det(w, 0, 1) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(normal_rotation_det(w, 1, 1) == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(normal_rotation_det(w, 1, 2) == doctest::Approx(9.0).epsilon(1e-14));
    // (2 + 2 cos(pi/5))^2 and (2 - 2 cos(2 pi/5))^2.
    CHECK(normal_rotation_det(w, 2, 1) == doctest::Approx(13.090169943749475).epsilon(1e-12));
    CHECK(normal_rotation_det(w, 2, 2) == doctest::Approx(1.9098300562505257).epsilon(1e-12));
    CHECK(normal_rotation_det(w, 2, 3) == doctest::Approx(normal_rotation_det(w, 2, 2)));
    CHECK(normal_rotation_det(w, 2, 4) == doctest::Approx(normal_rotation_det(w, 2, 1)));

    const WeightVector w23({2, 3});
    CHECK(normal_rotation_det(w23, 0, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(normal_rotation_det(w23, 1, 1) == doctest::Approx(3.0).epsilon(1e-14));

    CHECK_THROWS_AS(normal_rotation_det(w, 5, 1), std::out_of_range);
    CHECK_THROWS_AS(normal_rotation_det(w, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(normal_rotation_det(w, 2, 5), std::invalid_argument);
}

TEST_CASE("trace sum: exact periodicity, conjugation, and geometric values") {
    const WeightVector w({2, 3, 5});
    const std::vector<double> c{0.8, 0.5, 0.7, 2.0, 1.0, 1.1, 0.3};

    for (const std::int64_t n : {1, 7, 13, 29}) {
        const auto a = trace_sum(w, c, n);
        const auto b = trace_sum(w, c, n + 30);
        CHECK(a.real() == b.real());  // bitwise periodicity
        CHECK(a.imag() == b.imag());
        const auto m = trace_sum(w, c, -n);
        CHECK(m.real() == a.real());  // bitwise conjugation
        CHECK(m.imag() == -a.imag());
    }

    // Coefficients equal to the determinants turn the sum into pure phase
    // sums: at N = 1 it is (-1) + 2cos(2 pi/3) = -2, at N = 6 it is 3.
    const WeightVector w23({2, 3});
    const std::vector<double> cd{4.0, 3.0, 3.0};
    const auto t1 = trace_sum(w23, cd, 1);
    CHECK(t1.real() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(t1.imag() == 0.0);
    const auto t6 = trace_sum(w23, cd, 6);
    CHECK(t6.real() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(t6.imag() == 0.0);

    // Conjugation-symmetric coefficients kill the imaginary part identically.
    const std::vector<double> ones(7, 1.0);
    for (std::int64_t n = 1; n <= 64; ++n)
        CHECK(std::abs(trace_sum(w, ones, n).imag()) <= 1e-15);

    // Asymmetric coefficients do not: Im at N = 1 for (2,3), c = (1,1,2) is
    // (2 - 1) * sin(2 pi/3) / 3 = sqrt(3)/6.
    const std::vector<double> c112{1.0, 1.0, 2.0};
    CHECK(trace_sum(w23, c112, 1).imag() ==
          doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-13));

    const std::vector<double> short_c{1.0, 1.0};
    CHECK_THROWS_AS(trace_sum(w, short_c, 1), std::invalid_argument);
    const std::vector<double> neg_c{0.8, 0.5, 0.7, -2.0, 1.0, 1.1, 0.3};
    CHECK_THROWS_AS(trace_sum(w, neg_c, 1), std::invalid_argument);
}

TEST_CASE("realness at multiples of the weight product is exact") {
    const WeightVector w({2, 3, 5});
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> U(0.2, 1.7);
    std::vector<double> c(7);
    for (auto& x : c) x = U(rng);
    for (std::int64_t j = 1; j <= 20; ++j) CHECK(trace_sum(w, c, 30 * j).imag() == 0.0);
    // Half-period multiples are real too (the weight-2 blind spot for
    // realness-only identification).
    CHECK(trace_sum(w, c, 15).imag() == 0.0);
    CHECK(trace_sum(w, c, 45).imag() == 0.0);
}

TEST_CASE("weight recovery identifies the weights from 64 samples") {
    const WeightVector w({2, 3, 5});
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> U(0.2, 1.7);
    std::vector<double> c(7);
    for (auto& x : c) x = U(rng);

    const auto rec = recover_weights(sample_range(w, c, 64), 50, 2, 4);
    CHECK(rec.realness_period == 30);
    REQUIRE(rec.candidates.size() == 1);
    CHECK(rec.candidates[0].weights() == std::vector<std::int64_t>{2, 3, 5});
    CHECK(rec.diagnostics.empty());

    // Symmetric coefficients make every sample real; the Re-maximality
    // condition still pins the full product.
    const std::vector<double> adv{0.8, 0.5, 0.5, 2.0, 1.0, 1.0, 2.0};
    const auto rec_adv = recover_weights(sample_range(w, adv, 64), 50, 2, 4);
    CHECK(rec_adv.realness_period == 30);
    REQUIRE(rec_adv.candidates.size() == 1);
    CHECK(rec_adv.candidates[0].weights() == std::vector<std::int64_t>{2, 3, 5});

    const WeightVector w23({2, 3});
    const std::vector<double> c23{0.7, 1.1, 0.4};
    const auto rec23 = recover_weights(sample_range(w23, c23, 13), 50, 2, 4);
    CHECK(rec23.realness_period == 6);
    REQUIRE(rec23.candidates.size() == 1);
    CHECK(rec23.candidates[0].weights() == std::vector<std::int64_t>{2, 3});
}

TEST_CASE("recovery diagnostics name the failure") {
    const WeightVector w({2, 3, 5});
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> U(0.2, 1.7);
    std::vector<double> c(7);
    for (auto& x : c) x = U(rng);

    // Only one multiple of 30 within range: not enough evidence.
    const auto short_rec = recover_weights(sample_range(w, c, 40), 50, 2, 4);
    CHECK(short_rec.candidates.empty());
    CHECK(short_rec.realness_period == 0);
    CHECK(short_rec.diagnostics.find("extend the sample range") != std::string::npos);

    // Prime factor above the declared bound.
    const auto bound_rec = recover_weights(sample_range(w, c, 64), 3, 2, 4);
    CHECK(bound_rec.candidates.empty());
    CHECK(bound_rec.realness_period == 30);
    CHECK(bound_rec.diagnostics.find("exceeds the bound") != std::string::npos);

    // Factor count outside the guess range.
    const WeightVector w23({2, 3});
    const std::vector<double> c23{0.7, 1.1, 0.4};
    const auto d_rec = recover_weights(sample_range(w23, c23, 13), 50, 3, 4);
    CHECK(d_rec.candidates.empty());
    CHECK(d_rec.diagnostics.find("outside the guess range") != std::string::npos);

    // Fabricated data whose minimal real period is not squarefree.
    std::vector<TraceSample> fab;
    for (std::int64_t n = 1; n <= 16; ++n)
        fab.push_back({n, n % 4 == 0 ? std::complex<double>{1.0, 0.0}
                                     : std::complex<double>{0.5, 0.1}});
    const auto fab_rec = recover_weights(fab, 50, 2, 4);
    CHECK(fab_rec.candidates.empty());
    CHECK(fab_rec.realness_period == 4);
    CHECK(fab_rec.diagnostics.find("not squarefree") != std::string::npos);
}

TEST_CASE("recovery input validation") {
    CHECK_THROWS_AS(recover_weights({}, 50, 2, 4), std::invalid_argument);

    const WeightVector w23({2, 3});
    const std::vector<double> c23{0.7, 1.1, 0.4};
    auto samples = sample_range(w23, c23, 13);
    CHECK_THROWS_AS(recover_weights(samples, 50, 1, 4), std::invalid_argument);  // d_min < 2
    CHECK_THROWS_AS(recover_weights(samples, 50, 4, 3), std::invalid_argument);  // empty range

    samples.push_back({13, trace_sum(w23, c23, 13)});
    CHECK_THROWS_AS(recover_weights(samples, 50, 2, 4), std::invalid_argument);  // duplicate N

    std::vector<TraceSample> bad{{0, {1.0, 0.0}}, {1, {1.0, 0.0}}};
    CHECK_THROWS_AS(recover_weights(bad, 50, 2, 4), std::invalid_argument);      // N <= 0
}
