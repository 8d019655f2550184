/** \file tridiagonal.hpp
 *  \brief Symmetric tridiagonal eigenvalue solver: bisection on Sturm
 *         sequences plus inverse iteration for eigenvectors.
 *
 *  This is the single eigenvalue engine behind every 1-D self-adjoint
 *  discretization in the artifact.  Bisection is chosen for robustness and
 *  because it extracts an eigenvalue window at a cost proportional to the
 *  window size, which is exactly the access pattern of the counting and
 *  measure pipelines.
 */

#ifndef EVSPEC_TRIDIAGONAL_HPP
#define EVSPEC_TRIDIAGONAL_HPP

#include <cstddef>
#include <vector>

namespace evspec {

/// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e (size n-1).
struct Tridiagonal {
    std::vector<double> d;
    std::vector<double> e;

    std::size_t size() const { return d.size(); }
    /// Number of eigenvalues strictly below x (Sturm count via the shifted
    /// LDL^T recurrence with underflow guards).
    std::size_t count_below(double x) const;
    /// Gershgorin bounds [lo, hi] containing the full spectrum.
    void gershgorin(double& lo, double& hi) const;
    /// The k lowest eigenvalues (ascending), each located by bisection to
    /// absolute tolerance `tol * scale` where scale is the Gershgorin radius.
    std::vector<double> lowest_eigenvalues(std::size_t k, double tol = 1e-14) const;
    /// All eigenvalues in (lo, hi], ascending.
    std::vector<double> eigenvalues_below(double cap, double tol = 1e-14) const;
    /// Inverse iteration for the eigenvector of an isolated eigenvalue
    /// `lambda`; returns a unit 2-norm vector.
    std::vector<double> eigenvector(double lambda) const;
};

}  // namespace evspec

#endif
