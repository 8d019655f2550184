#include "evspec/wps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace evspec {

namespace {

bool is_prime(std::int64_t m) {
    if (m < 2) return false;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) return false;
    }
    return true;
}

/// e^{-2 pi i r / m} for an integer residue r in [0, m).  The angle is
/// canonicalized to [0, pi] before calling the trig functions, so that the
/// r <-> m - r conjugation and the s <-> m - s cosine symmetry hold bitwise,
/// and the values at r = 0 and 2r = m are exact.
std::complex<double> unit_phase(std::int64_t r, std::int64_t m) {
    if (r == 0) return {1.0, 0.0};
    if (2 * r == m) return {-1.0, 0.0};
    const std::int64_t rr = std::min(r, m - r);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(rr) / static_cast<double>(m);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, r < m - r ? -s : s};
}

std::int64_t positive_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

WeightVector::WeightVector(std::vector<std::int64_t> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2) {
        throw std::invalid_argument("WeightVector: need at least 2 weights, got " +
                                    std::to_string(weights_.size()));
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!is_prime(weights_[i])) {
            throw std::invalid_argument("WeightVector: weight " + std::to_string(weights_[i]) +
                                        " is not prime");
        }
        for (std::size_t j = i + 1; j < weights_.size(); ++j) {
            if (weights_[i] == weights_[j]) {
                throw std::invalid_argument("WeightVector: weights must be pairwise distinct (" +
                                            std::to_string(weights_[i]) + " repeats)");
            }
        }
    }
    std::int64_t prod = 1;
    for (std::int64_t m : weights_) {
        if (__builtin_mul_overflow(prod, m, &prod)) {
            throw std::invalid_argument("WeightVector: weight product overflows 64 bits");
        }
    }
}

std::int64_t WeightVector::period() const {
    std::int64_t prod = 1;
    for (std::int64_t m : weights_) prod *= m;
    return prod;
}

std::vector<IsotropyPair> isotropy_list(const WeightVector& w) {
    std::vector<IsotropyPair> out;
    for (std::size_t k = 0; k < w.weights().size(); ++k) {
        for (std::int64_t s = 1; s < w.weights()[k]; ++s) out.push_back({k, s});
    }
    return out;
}

double normal_rotation_det(const WeightVector& w, std::size_t k, std::int64_t s) {
    const auto& m = w.weights();
    if (k >= m.size()) {
        throw std::out_of_range("normal_rotation_det: weight index " + std::to_string(k) +
                                " out of range");
    }
    const std::int64_t mk = m[k];
    if (s < 1 || s >= mk) {
        throw std::invalid_argument("normal_rotation_det: power s = " + std::to_string(s) +
                                    " outside 1.." + std::to_string(mk - 1));
    }
    double det = 1.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (j == k) continue;
        const std::int64_t rho = positive_mod(s * (m[j] % mk), mk);
        if (rho == 0) {
            throw std::runtime_error("normal_rotation_det: rotation angle vanishes for weights " +
                                     std::to_string(m[j]) + " and " + std::to_string(mk) +
                                     "; weights are not distinct primes");
        }
        const std::int64_t rr = std::min(rho, mk - rho);
        det *= 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(rr) /
                                    static_cast<double>(mk));
    }
    return det;
}

std::complex<double> trace_sum(const WeightVector& w, std::span<const double> coefficients,
                               std::int64_t N) {
    const auto pairs = isotropy_list(w);
    if (coefficients.size() != pairs.size()) {
        throw std::invalid_argument("trace_sum: got " + std::to_string(coefficients.size()) +
                                    " coefficients for " + std::to_string(pairs.size()) +
                                    " isotropy pairs");
    }
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (!(coefficients[i] > 0.0) || !std::isfinite(coefficients[i])) {
            throw std::invalid_argument("trace_sum: coefficient " + std::to_string(i) +
                                        " must be a positive real");
        }
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [k, s] = pairs[i];
        const std::int64_t mk = w.weights()[k];
        const std::int64_t r = positive_mod(s * positive_mod(N, mk), mk);
        sum += unit_phase(r, mk) * (coefficients[i] / normal_rotation_det(w, k, s));
    }
    return sum;
}

WeightRecovery recover_weights(std::span<const TraceSample> samples, std::int64_t prime_bound,
                               int d_min, int d_max) {
    if (samples.empty()) {
        throw std::invalid_argument("recover_weights: no samples");
    }
    if (d_min < 2 || d_max < d_min) {
        throw std::invalid_argument("recover_weights: invalid d range [" + std::to_string(d_min) +
                                    ", " + std::to_string(d_max) + "]");
    }
    std::map<std::int64_t, std::complex<double>> by_n;
    double scale = 0.0;
    for (const auto& s : samples) {
        if (s.N <= 0) {
            throw std::invalid_argument("recover_weights: sample N = " + std::to_string(s.N) +
                                        " is not a positive integer");
        }
        if (!by_n.emplace(s.N, s.value).second) {
            throw std::invalid_argument("recover_weights: duplicate sample at N = " +
                                        std::to_string(s.N));
        }
        scale = std::max(scale, std::abs(s.value));
    }
    const std::int64_t n_max = by_n.rbegin()->first;
    const double floor = 1e-14 * scale;
    // At multiples of the weight product the trace equals max Re exactly (all
    // phases are +1 and the coefficients are positive); elsewhere Re drops
    // strictly below.  Requiring the sampled multiples to be real *and*
    // Re-maximal discriminates the full product where realness alone cannot
    // see a weight of 2.
    double re_max = -std::numeric_limits<double>::infinity();
    for (const auto& [n, v] : by_n) re_max = std::max(re_max, v.real());
    const auto attains_max = [&](const std::complex<double>& v) {
        return std::abs(v.imag()) <= std::max(1e-9 * std::abs(v), floor) &&
               std::abs(v - re_max) <= std::max(1e-9 * std::abs(re_max), floor);
    };

    WeightRecovery out;
    std::int64_t n0 = 0;
    for (std::int64_t cand = 1; cand <= n_max && n0 == 0; ++cand) {
        int multiples = 0;
        bool accept = true;
        for (std::int64_t n = cand; n <= n_max && accept; n += cand) {
            const auto it = by_n.find(n);
            if (it == by_n.end()) continue;
            ++multiples;
            accept = attains_max(it->second);
        }
        if (accept && multiples >= 2) n0 = cand;
    }
    if (n0 == 0) {
        out.diagnostics = "no N0 <= " + std::to_string(n_max) +
                          " has all sampled multiples real; extend the sample range";
        return out;
    }
    out.realness_period = n0;

    std::vector<std::int64_t> primes;
    std::int64_t rest = n0;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        rest /= p;
        if (rest % p == 0) {
            out.diagnostics = "minimal real period N0 = " + std::to_string(n0) +
                              " is not squarefree (prime " + std::to_string(p) +
                              " repeats); samples are inconsistent with distinct prime weights";
            return out;
        }
        primes.push_back(p);
    }
    if (rest > 1) primes.push_back(rest);

    for (std::int64_t p : primes) {
        if (p > prime_bound) {
            out.diagnostics = "prime factor " + std::to_string(p) + " of N0 = " +
                              std::to_string(n0) + " exceeds the bound " +
                              std::to_string(prime_bound);
            return out;
        }
    }
    const int d = static_cast<int>(primes.size());
    if (d < d_min || d > d_max) {
        out.diagnostics = "N0 = " + std::to_string(n0) + " has " + std::to_string(d) +
                          " prime factors, outside the guess range [" + std::to_string(d_min) +
                          ", " + std::to_string(d_max) + "]";
        return out;
    }
    out.candidates.emplace_back(primes);
    return out;
}

}  // namespace evspec
