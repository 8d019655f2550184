/** \file quadrature.hpp
 *  \brief Gauss-Legendre rules, composite/graded panel decompositions and
 *         deterministic pairwise summation.
 *
 *  The integrands in this artifact fall into three families: smooth compactly
 *  supported functions (handled by plain composite rules), integrands with
 *  square-root endpoint behavior (handled by a sqrt substitution in the
 *  endpoint panels) and boundary-layer exponentials exp(-t*phi) (handled by
 *  geometrically graded panels toward the boundary).
 */

#ifndef EVSPEC_QUADRATURE_HPP
#define EVSPEC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace evspec {

/// Nodes and weights of an m-point Gauss-Legendre rule on [-1, 1].
/// Computed once per order by Newton iteration on the Legendre polynomial and
/// cached; orders up to 64 are supported.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
    static const GaussLegendre& get(int order);
};

/// Sum the values in a deterministic pairwise (cascade) order.  Used as the
/// single reduction primitive so that results do not depend on accumulation
/// order even if callers chunk their work.
double pairwise_sum(std::vector<double>&& values);

/// Integrate f over [a, b] with a composite Gauss-Legendre rule on `panels`
/// equal panels of order `order`.
double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int order = 20);

/// Integrate f over [a, b] where f behaves like sqrt(x - a) near a and like
/// sqrt(b - x) near b (value ~ C * sqrt(distance), derivative unbounded).
/// Each half is mapped by the substitution x = endpoint -/+ tau^2, which makes
/// the integrand smooth, then integrated with a composite rule.
double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                int panels, int order = 20);

/// Panel edges on [0, length] geometrically graded toward 0: the first panel
/// has width `w0` and widths grow by `factor` until the interval is covered.
/// Used to resolve exp(-t*phi) boundary layers with w0 ~ 1/t.
std::vector<double> graded_edges(double length, double w0, double factor = 2.0);

/// Panel edges on [0, 1] graded toward both endpoints with first-panel width
/// w0 (relative), growth `factor`, merging in the middle.
std::vector<double> graded_edges_both(double w0, double factor = 2.0);

}  // namespace evspec

#endif
