/** \file polytope.hpp
 *  \brief Labeled moment polytopes and symplectic potentials: defining
 *         functions, the canonical potential, metric Hessians and their
 *         boundary behavior.
 */

#ifndef EVSPEC_POLYTOPE_HPP
#define EVSPEC_POLYTOPE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "evspec/small_linalg.hpp"

namespace evspec {

/// One facet of a labeled polytope: l(x) = x . (label * eta0) - offset >= 0
/// inside the polytope.  eta0 is the primitive integer inward normal and the
/// positive integer label rescales it to the labeled normal eta = label*eta0.
struct Facet {
    std::vector<std::int64_t> eta0;
    int label = 1;
    double offset = 0.0;
};

/// A rational simple polytope given as a facet list; the combinatorial ground
/// truth of every toric computation here.  Dimensions 1 and 2 are supported.
class LabeledPolytope {
public:
    /// Validates primitivity of the normals, positivity of the labels,
    /// boundedness, nonempty interior, and (for n=2) simplicity; throws
    /// std::invalid_argument with a description on failure.
    LabeledPolytope(int dimension, std::vector<Facet> facets);

    int dimension() const { return n_; }
    const std::vector<Facet>& facets() const { return facets_; }
    std::size_t facet_count() const { return facets_.size(); }

    /// Labeled normal eta_i = label_i * eta0_i as doubles.
    std::vector<double> labeled_normal(std::size_t i) const;

    /// True when all defining functions are strictly positive.
    bool is_interior(std::span<const double> x, double margin = 0.0) const;

    /// Vertices in counterclockwise order (n=2) or the two endpoints (n=1).
    const std::vector<std::array<double, 2>>& vertices() const { return vertices_; }

    /// Largest pairwise vertex distance.
    double diameter() const;

    // Named fixtures used across the test and experiment suites.
    static LabeledPolytope interval(double lo = -1.0, double hi = 1.0);
    static LabeledPolytope unit_simplex();
    static LabeledPolytope rectangle(double a, double b);

private:
    int n_;
    std::vector<Facet> facets_;
    std::vector<std::array<double, 2>> vertices_;

    void validate_and_build();
};

/// Values (l_1(x), ..., l_d(x)) in facet order; x is interior iff all entries
/// are strictly positive.  Throws std::invalid_argument on dimension mismatch.
std::vector<double> affine_defining_functions(const LabeledPolytope& P, std::span<const double> x);

/// Evaluation record of a potential at an interior point.
struct PotentialEval {
    double value = 0.0;
    std::array<double, 2> gradient{};
    SymMat hessian;
};

/// Canonical potential g_P(x) = (1/2) * sum_i (l_i log l_i - l_i) with its
/// gradient and Hessian; Hessian entry (a,b) = (1/2) * sum_i eta_i^a eta_i^b / l_i.
/// The global factor 1/2 is this artifact's normalization: it is the unique
/// scaling for which the interval potential satisfies g''(x)*(1-x^2) = 1, the
/// boundary condition the sphere pipelines rely on.
/// Throws std::domain_error when x is on or outside the boundary.
PotentialEval canonical_potential(const LabeledPolytope& P, std::span<const double> x);

/// A twice-differentiable scalar function descriptor: closed form callables
/// or a sampled-with-interpolation representation.
struct C2Function {
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;
    std::function<SymMat(std::span<const double>)> hessian;

    static C2Function zero(int n);
    /// Quadratic form x -> x^T Q x / 2 (Hessian identically Q).
    static C2Function quadratic(const SymMat& Q);
    /// Natural cubic spline through 1-D samples; the sample box should pad
    /// the polytope by a margin so evaluation stays inside the data.
    static C2Function from_samples_1d(std::vector<double> x, std::vector<double> y);
};

/// Canonical potential plus a smooth correction; yields Hess g and its
/// inverse wherever Hess g is positive definite.  Positive-definiteness is
/// checked lazily at each evaluation.
class SymplecticPotential {
public:
    SymplecticPotential(LabeledPolytope polytope, C2Function correction);
    static SymplecticPotential canonical(LabeledPolytope polytope);

    const LabeledPolytope& polytope() const { return polytope_; }
    const C2Function& correction() const { return correction_; }

private:
    LabeledPolytope polytope_;
    C2Function correction_;
};

/// Metric Hessian H = Hess g_P + Hess correction at an interior point,
/// together with its inverse.  H_inv * H equals the identity to 1e-12 in max
/// norm (asserted).  Throws std::domain_error when x is not interior or the
/// Hessian fails to be positive definite (the message names x).
struct MetricHessian {
    SymMat H;
    SymMat H_inv;
};
MetricHessian metric_hessian(const SymplecticPotential& pot, std::span<const double> x);

/// The normalized facet ratio eta_i^T H_inv eta_i / (2 l_i(x)) along a
/// sequence of interior points approaching facet i.  The factor 2 in the
/// denominator compensates the 1/2 carried by the canonical potential, so
/// the returned sequence converges to 1 with O(distance) deviation for any
/// smooth correction.  Throws std::out_of_range for a bad facet index.
std::vector<double> boundary_ratio(const SymplecticPotential& pot, std::size_t facet_index,
                                   const std::vector<std::vector<double>>& points);

}  // namespace evspec

#endif
