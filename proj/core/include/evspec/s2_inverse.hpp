/** \file s2_inverse.hpp
 *  \brief Recovery of an even convex S^2 metric profile from push-forward
 *         density data, by Abel-transform inversion.
 *
 *  Writing g''(x) = w(x) + c with c = min g'' and w even, increasing on
 *  [0, 1), the half-line density satisfies
 *    D(t) = integral_0^{w^{-1}(t)} sqrt(w(x)+c) / sqrt(t - w(x)) dx
 *         = (Abel_forward phi)(t),   phi(y) = sqrt(y+c) * (w^{-1})'(y),
 *  so w^{-1} (hence w, hence g'') follows from one Abel inversion and a
 *  cumulative integral.  All singular kernels are product-integrated exactly
 *  against piecewise-linear data, which is what keeps the pipeline inside
 *  the 1% window.
 */

#ifndef EVSPEC_S2_INVERSE_HPP
#define EVSPEC_S2_INVERSE_HPP

#include "evspec/grid_function.hpp"
#include "evspec/reduced_symbol.hpp"
#include "evspec/spectra.hpp"

namespace evspec {

/// Abel data extracted from a push-forward density: D on the shifted grid
/// t~ = t - c (excluding the singular endpoint t~ = 0), the estimated bottom
/// constant c, and the weight it was computed at.
struct AbelPair {
    GridFunction D;
    double c = 0.0;
    double alpha = 1.0;
};

/// Extract (D, c) from a density grid q sampled on a uniform t grid:
/// c is the infimum of the support of q with a half-bin correction, and
/// D(t~) = alpha * q(t~ + c)/2 on the shifted grid (nodes within one cell of
/// the support edge are rebuilt by extrapolation, since centered differences
/// are unreliable across the kink at t = c).  Throws when q has empty or
/// nearly empty support.
AbelPair density_to_abel(const DensityGrid& q, double alpha);

/// Abel fractional integral A(t) = integral_0^t f(y)/sqrt(t-y) dy on the
/// grid of f (which must start at 0).  Product integration: f is treated as
/// piecewise linear and the kernel integrated exactly per cell.
GridFunction abel_forward(const GridFunction& f);

/// Abel inversion f(t) = (1/pi) d/dt integral_0^t D(tau)/sqrt(t-tau) dtau on
/// the grid of D (which must start at 0).  The derivative is applied
/// analytically to the product-integration rule:
///   f(t) = (1/pi) [ D(0)/sqrt(t) + integral_0^t D'(tau)/sqrt(t-tau) dtau ],
/// exact for piecewise-linear D; D(0) need not vanish.  The value at the
/// grid origin is filled by linear extrapolation (the data does not
/// determine it).  A jump larger than half the data range within one cell
/// fails the continuity precheck and throws, citing the cell.
GridFunction abel_invert(const GridFunction& D);

/// Run the full chain D -> phi -> w^{-1} -> w -> g'' = (w + c)/alpha^2 and
/// return the profile on [-1, 1]: recovered values inside |x| <= x_max, and
/// the structural continuation g'' = 1/(1-x^2) + smooth remainder (the
/// remainder extended linearly in x^2) outside, so the pole behavior is
/// correct by construction.  Throws if w^{-1} comes out non-monotone (the
/// convexity hypothesis fails) or if the data does not reach x_max.
S2MetricProfile recover_profile(const AbelPair& pair, double x_max);

}  // namespace evspec

#endif
