/** \file polygon_recon.hpp
 *  \brief Facet detection from boundary heat integrals and Minkowski-style
 *         reconstruction of a convex polygon from its facet signatures.
 *
 *  The forward object is the heat integral I(t, u) = int_P exp(-t u^T K u) dx
 *  of a toric metric Hessian over its moment polygon.  As t grows, the
 *  integrand survives only in the boundary layer of facets whose labeled
 *  normal is parallel to u, and t*I(t, u) converges to the lattice volume of
 *  that facet (0 when u is parallel to no facet).  Scanning primitive integer
 *  directions therefore recovers the facet normals up to sign together with
 *  their lattice volumes, and a sign search plus the closing-up condition
 *  sum_i L_i n_i = 0 rebuilds the polygon up to translation and point
 *  reflection.
 */

#ifndef EVSPEC_POLYGON_RECON_HPP
#define EVSPEC_POLYGON_RECON_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "evspec/polytope.hpp"

namespace evspec {

/// Boundary heat integral I(t, u) = int_P exp(-t * u^T K(x) u) dx over the
/// moment polygon of `pot`, where K = H^{-1}/2 and H is the metric Hessian.
/// The factor 1/2 compensates the normalization of the canonical potential,
/// so that u^T K u decays like the affine distance to a facet with labeled
/// normal +-u and the facet limit of t*I is the lattice volume.
///
/// The polygon is mapped to [0,1]^2 (a collapsed-corner map for triangles, a
/// bilinear map for quadrilaterals, a centroid fan of collapsed-corner
/// triangle maps otherwise) and integrated with Gauss-Legendre panels
/// geometrically graded toward the boundary layer of width ~1/t.  Two
/// refinement levels are compared; they must agree to 1e-3 relative or a
/// std::runtime_error reports the disagreement.  Only n = 2 polytopes are
/// supported (std::invalid_argument otherwise, as for t <= 0 or u = 0).
double heat_integral(const SymplecticPotential& pot, std::span<const double> u, double t);

/// One facet class recovered from heat-integral asymptotics: a primitive
/// integer normal (its sign is not observable, since I(t,u) = I(t,-u); the
/// stored representative has first nonzero component positive) and the
/// lattice volume of the facet, i.e. Euclidean length / |primitive normal|
/// scaled by the facet label.
struct FacetSignature {
    std::array<std::int64_t, 2> normal{0, 0};
    double lattice_volume = 0.0;
    bool sign_ambiguous = true;
};

/// Result of a facet scan: the detected signatures, plus any directions whose
/// t -> infinity extrapolation failed to settle (diagnostics; empty on a
/// clean run).
struct FacetDetection {
    std::vector<FacetSignature> signatures;
    std::vector<std::array<std::int64_t, 2>> undecided;
};

/// Heat-integral oracle: (u, t) -> I(t, u).  Decouples detection from the
/// quadrature so tests can substitute closed forms or corrupted data.
using HeatOracle = std::function<double(std::span<const double>, double)>;

/// Geometric schedule t = 2^4, 2^5, ..., 2^14 used by the facet scan.
std::vector<double> default_t_schedule();

/// Scan all primitive integer directions u with |u| <= normal_bound (one
/// representative per +-pair) and extrapolate t*I(t,u) to t = infinity by
/// Neville's scheme in the variable 1/t over the tail of `t_schedule`.
/// Directions whose limit exceeds theta = 1e-3 * diameter_hint become facet
/// signatures; limits below theta are discarded as non-facets; directions
/// whose extrapolation error estimate stays above the decision scale are
/// reported as undecided.  Throws std::invalid_argument for a bound < 1 or a
/// schedule with fewer than 4 points.
FacetDetection detect_facets(const HeatOracle& oracle, int normal_bound,
                             std::span<const double> t_schedule, double diameter_hint);

/// A simple polygon as a counterclockwise vertex loop.
struct Polygon {
    std::vector<std::array<double, 2>> vertices;

    double area() const;                    ///< shoelace area (positive when CCW)
    std::array<double, 2> centroid() const; ///< area centroid
};

/// Rebuild a convex polygon from facet signatures with unknown normal signs.
/// Searches all 2^(m-1) sign assignments for the one minimizing the closure
/// defect |sum_i L_i n_i| (L_i = lattice_volume * |normal|, n_i the unit
/// normal).  A defect <= closure_tol * sum L_i is accepted as exact; a defect
/// up to repair_cap * sum L_i is repaired by the minimum-norm length
/// correction that restores closure (this absorbs the few-percent volume
/// errors of detected signatures); anything larger throws std::runtime_error
/// (inconsistent signatures).  Signatures with parallel normals (a rectangle
/// has indistinguishable opposite facets under the sign ambiguity) or fewer
/// than three classes throw std::invalid_argument.
///
/// Returns the polygon anchored with its first vertex at the origin together
/// with its point reflection; the data cannot distinguish the two.
std::pair<Polygon, Polygon> minkowski_polygon(std::span<const FacetSignature> signatures,
                                              double closure_tol = 1e-6,
                                              double repair_cap = 0.05);

/// Ground-truth signatures of a labeled polygon, facet by facet, with the
/// same normalization that the heat-integral limit produces.  Used to close
/// the loop in reconstruction tests and to report detection errors.
std::vector<FacetSignature> exact_signatures(const LabeledPolytope& P);

/// Vertex loop of a labeled polygon as a Polygon (n = 2 only).
Polygon polygon_of(const LabeledPolytope& P);

/// Best vertex-wise distance between two polygons after centroid alignment,
/// minimized over cyclic relabelings: max_i |p_i - q_(i+k)| for the best k.
/// Returns infinity when vertex counts differ.  Reflections are not tried;
/// callers pass each candidate separately.
double vertex_distance(const Polygon& a, const Polygon& b);

}  // namespace evspec

#endif
