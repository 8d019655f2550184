/** \file wps.hpp
 *  \brief Fixed-point bookkeeping for weighted circle actions: isotropy
 *         enumeration, rotation determinants, oscillatory trace sums and
 *         recovery of prime weights from realness of the sum.
 *
 *  For a circle acting on a product of complex lines with pairwise distinct
 *  prime weights m_1, ..., m_d, every nontrivial isotropy group is Z/m_k and
 *  is sampled by the pairs (k, s), s = 1..m_k-1.  The trace-type sums carry a
 *  phase e^{-2 pi i s N / m_k} per pair and become real exactly when N is a
 *  multiple of the product of the weights; scanning the realness pattern over
 *  N therefore identifies the weights.  All phase angles are reduced with
 *  integer modular arithmetic before any trigonometry, which makes
 *  periodicity in N and the N <-> -N conjugation bitwise exact.
 */

#ifndef EVSPEC_WPS_HPP
#define EVSPEC_WPS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace evspec {

/// Pairwise distinct prime weights of a circle action, d >= 2.  Primality is
/// checked by trial division at construction (std::invalid_argument on
/// duplicates, composites, or d < 2).
class WeightVector {
public:
    explicit WeightVector(std::vector<std::int64_t> weights);

    int count() const { return static_cast<int>(weights_.size()); }
    const std::vector<std::int64_t>& weights() const { return weights_; }
    /// Product m_1 * ... * m_d, the fundamental realness period in N.
    std::int64_t period() const;

private:
    std::vector<std::int64_t> weights_;
};

/// One isotropy datum: the index k of the weight and the root-of-unity power
/// s in 1..m_k-1.
struct IsotropyPair {
    std::size_t k = 0;
    std::int64_t s = 0;
};

/// All isotropy pairs of w in (k, s) lexicographic order; the total count is
/// sum_k (m_k - 1).
std::vector<IsotropyPair> isotropy_list(const WeightVector& w);

/// Determinant factor of the rotation normal to the (k, s) fixed stratum:
/// prod_{j != k} (2 - 2 cos(2 pi s m_j / m_k)), each factor the determinant
/// of (R - I) for a 2x2 rotation R.  The angles are reduced mod m_k in
/// integer arithmetic; distinct primes guarantee every reduced angle is
/// nonzero, so the product is strictly positive.  Throws std::out_of_range
/// for a bad k, std::invalid_argument for s outside 1..m_k-1, and
/// std::runtime_error if an angle reduces to 0 (non-distinct or non-prime
/// weights slipped past validation).
double normal_rotation_det(const WeightVector& w, std::size_t k, std::int64_t s);

/// Oscillatory fixed-point sum at inverse semiclassical parameter N = 1/h:
/// sum over isotropy pairs of e^{-2 pi i s N / m_k} * c_{k,s} / det(k, s).
/// The coefficients model the positive push-forward densities of the strata
/// and are indexed in isotropy_list order (std::invalid_argument on a length
/// mismatch or a nonpositive coefficient).  Exact in the sense above:
/// trace_sum(w, c, N + period) == trace_sum(w, c, N) bitwise, and
/// trace_sum(w, c, -N) == conj(trace_sum(w, c, N)).
std::complex<double> trace_sum(const WeightVector& w, std::span<const double> coefficients,
                               std::int64_t N);

/// One observed trace value at integer N = 1/h.
struct TraceSample {
    std::int64_t N = 0;
    std::complex<double> value;
};

/// Outcome of a weight-recovery scan.  On success `candidates` holds the
/// (single) weight vector consistent with the data and `realness_period` the
/// minimal N0 whose sampled multiples are all real; on failure `candidates`
/// is empty and `diagnostics` says why (no real sublattice below N_max, a
/// non-squarefree N0, primes above the bound, d outside the guess range).
struct WeightRecovery {
    std::vector<WeightVector> candidates;
    std::int64_t realness_period = 0;
    std::string diagnostics;
};

/// Recover distinct prime weights from trace samples.  At a multiple of the
/// weight product every phase equals +1, so the trace is real and equal to
/// the maximum sum(c/det) -- and for positive coefficients the real part is
/// *strictly* below that maximum at every other N.  Realness alone is not
/// discriminating: a weight of 2 contributes (-1)^N * c/4, which is real for
/// every N, and coefficient symmetries c_{k,s} = c_{k,m_k-s} cancel the
/// imaginary part identically.  The scan therefore finds the minimal N0 such
/// that every sampled multiple of N0 is real (|Im| <= 1e-9 * |value|) and
/// attains the sample maximum of Re within the same relative tolerance
/// (absolute floor 1e-14 * max |value|), requiring at least two sampled
/// multiples so a single accidental hit cannot be accepted; then N0 is
/// factored by trial division and kept when it is squarefree with all primes
/// <= prime_bound and d_min <= #primes <= d_max.  Throws
/// std::invalid_argument on empty samples, nonpositive N, duplicate N, or an
/// empty d range.
WeightRecovery recover_weights(std::span<const TraceSample> samples, std::int64_t prime_bound,
                               int d_min, int d_max);

}  // namespace evspec

#endif
