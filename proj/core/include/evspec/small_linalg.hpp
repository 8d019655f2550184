/** \file small_linalg.hpp
 *  \brief Dense linear algebra for the 1x1 and 2x2 symmetric matrices that
 *         appear as metric Hessians and quadratic phases.
 *
 *  Everything in this artifact lives in ambient dimension 1 or 2, so a tiny
 *  fixed-size matrix type with closed-form determinant/inverse/eigenvalues is
 *  both faster and easier to audit than a general matrix library.
 */

#ifndef EVSPEC_SMALL_LINALG_HPP
#define EVSPEC_SMALL_LINALG_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace evspec {

/// Symmetric n x n matrix, n in {1, 2}.  Entries are stored row-major in a
/// fixed 2x2 block; for n = 1 only a[0] is meaningful.
struct SymMat {
    int n = 1;
    std::array<double, 4> a{};  // row-major: a[0]=m00, a[1]=m01, a[2]=m10, a[3]=m11

    static SymMat zero(int n);
    static SymMat identity(int n);
    /// Build from explicit entries; for n=1 pass m01 = m11 = 0.
    static SymMat from_entries(int n, double m00, double m01 = 0.0, double m11 = 0.0);

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }

    SymMat& operator+=(const SymMat& rhs);
    SymMat operator+(const SymMat& rhs) const;
    SymMat operator*(double s) const;

    double det() const;
    double trace() const;
    /// Closed-form inverse; throws std::domain_error when the determinant
    /// vanishes to within machine scale.
    SymMat inverse() const;
    /// Smallest eigenvalue (closed form for n <= 2).
    double min_eigenvalue() const;
    /// Signature: number of positive eigenvalues minus number of negative ones.
    int signature() const;
    /// Quadratic form v^T M v.
    double quad_form(std::span<const double> v) const;
    /// Matrix-vector product.
    std::array<double, 2> mul(std::span<const double> v) const;
    /// Max-norm of M*N - Id, used for inverse-consistency checks.
    double inverse_residual(const SymMat& inv) const;
    /// Max-norm deviation from symmetry (always 0 for stored symmetric data,
    /// provided for construction-time validation of raw input).
    static double asymmetry(int n, std::span<const double> rowmajor);
};

/// Dot product on spans of equal length (length 1 or 2 in practice).
double dot(std::span<const double> x, std::span<const double> y);

/// Euclidean norm.
double norm2(std::span<const double> x);

}  // namespace evspec

#endif
