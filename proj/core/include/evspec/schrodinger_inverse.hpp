/** \file schrodinger_inverse.hpp
 *  \brief Recovery of rotation-invariant Schrödinger potentials from the
 *         minimum function m(alpha), via concave duality.
 *
 *  For an admissible potential V on the positive orthant (partial derivatives
 *  positive, convex, proper), the bottom of the reduced symbol
 *    m(alpha) = min_{s > 0} [ sum_i alpha_i^2 / s_i + V(s) ]
 *  determines V:  G(a) = m(sqrt(a)) is concave in a = alpha^2, and
 *    V(s) = sup_a [ G(a) - sum_i a_i / s_i ].
 *  The sup is evaluated on the sampled a-grid and sharpened by a local
 *  parabola fit, which keeps the inversion robust to noisy m data coming from
 *  spectral bottoms.
 */

#ifndef EVSPEC_SCHRODINGER_INVERSE_HPP
#define EVSPEC_SCHRODINGER_INVERSE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "evspec/reduced_symbol.hpp"

namespace evspec {

/// Potential descriptor on the positive orthant; admissibility (monotone,
/// convex, proper) is a property of the data, verified by check_admissible
/// and enforced where the inversion needs it.
using AdmissiblePotential = OrthantPotential;

/// Minimum of sum alpha_i^2/s_i + V(s) over the declared box, by per-axis
/// golden-section search plus a damped coordinate-descent pass (argument
/// tolerance 1e-10).  Requires alpha_i > 0.  A minimizer pinned to the box
/// edge throws: the potential fails properness or the box is too small.
double forward_min(const AdmissiblePotential& V, std::span<const double> alpha);

/// m(alpha) read from spectra: bottom eigenvalue of the weight-k radial solve
/// at k = alpha/h (n = 1 only).  Converges to forward_min as h drops; no
/// h-extrapolation is applied.
double spectral_min(const AdmissiblePotential& V, double alpha, double h, double truncation_R,
                    int grid_size);

/// Sampled minimum function on a tensor grid of positive weights.
/// For n = 1, alpha2 is empty and m has one value per alpha1 entry; for
/// n = 2, m is row-major over alpha1 x alpha2.
struct MinFunction {
    int n = 1;
    std::vector<double> alpha1;
    std::vector<double> alpha2;
    std::vector<double> m;
};

/// Tabulate m(alpha) = forward_min over the given positive weight grid(s).
MinFunction tabulate_min_function(const AdmissiblePotential& V, std::vector<double> alpha1,
                                  std::vector<double> alpha2 = {});

/// Validate the defining laws of a MinFunction: grids positive strictly
/// increasing, m nondecreasing per axis, and G(a) = m(sqrt(a)) concave in
/// a = alpha^2 (second divided differences <= 1e-8).  Throws with the
/// offending index on failure.
void validate_min_function(const MinFunction& mf);

/// Result of the duality inversion on a requested s grid (row-major for
/// n = 2): recovered values plus the attaining a-grid index for each s.
struct RecoveredPotential {
    int n = 1;
    std::vector<double> s1;
    std::vector<double> s2;
    std::vector<double> V;
    std::vector<std::size_t> argmax;
};

/// V(s) = sup_a [G(a) - sum a_i/s_i] over the sampled a-grid, refined by a
/// per-axis parabola through the argmax.  If the sup is attained on the
/// a-grid boundary, throws naming the offending s (the data does not cover
/// enough of a-space); extrapolation is never attempted.
RecoveredPotential recover_potential(const MinFunction& mf, std::vector<double> s1,
                                     std::vector<double> s2 = {});

/// Per-condition admissibility report with a witness point for each failed
/// condition (empty when the condition holds).
struct AdmissibilityReport {
    bool monotone = true;
    bool convex = true;
    bool proper = true;
    std::vector<double> monotone_witness;
    std::vector<double> convex_witness;
    std::vector<double> proper_witness;

    bool all() const { return monotone && convex && proper; }
};

/// Check the admissibility conditions on a dense grid over the declared box:
/// positive partial derivatives (centered differences), positive-semidefinite
/// finite-difference Hessian, and growth from the box center to each upper
/// edge by at least 1 (properness proxy).
AdmissibilityReport check_admissible(const AdmissiblePotential& V, int grid = 64);

}  // namespace evspec

#endif
