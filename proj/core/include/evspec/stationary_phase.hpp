/** \file stationary_phase.hpp
 *  \brief Quadratic-phase oscillatory integrals and their asymptotic
 *         expansion, used to verify semiclassical error orders.
 *
 *  For a nonsingular symmetric A and smooth compactly supported f,
 *    I(h) = integral of f(x) exp(i <Ax,x> / 2h) dx
 *  has the expansion
 *    (2 pi h)^{n/2} |det A|^{-1/2} e^{i pi sgn(A)/4}
 *        * sum_{j < T} (-i h / 2)^j (b(D)^j f)(0) / j!
 *  with b(D) = -sum_ij B_ij d_i d_j and B = A^{-1}; the remainder is
 *  O(h^{n/2 + T}).
 */

#ifndef EVSPEC_STATIONARY_PHASE_HPP
#define EVSPEC_STATIONARY_PHASE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>

#include "evspec/small_linalg.hpp"

namespace evspec {

/// Nondegenerate quadratic phase <Ax,x>/2 in dimension n <= 2, with its
/// signature and inverse cached.  Construction rejects singular A; the
/// from_entries factory additionally rejects raw input whose asymmetry
/// exceeds 1e-12.
class QuadraticPhase {
public:
    explicit QuadraticPhase(const SymMat& A);

    /// Build from a raw row-major matrix, validating symmetry to 1e-12.
    static QuadraticPhase from_entries(int n, std::span<const double> row_major);

    int dim() const { return A_.n; }
    const SymMat& A() const { return A_; }
    /// Inverse B = A^{-1}; satisfies |B*A - I| <= 1e-12 by construction.
    const SymMat& B() const { return B_; }
    /// Number of positive minus number of negative eigenvalues.
    int signature() const { return signature_; }

private:
    SymMat A_;
    SymMat B_;
    int signature_ = 0;
};

/// Smooth function with compact support declared inside [lo, hi] per axis
/// (the function must vanish identically near the box boundary; quadrature
/// accuracy relies on it).
struct SmoothCompactFunction {
    int n = 1;
    std::function<double(std::span<const double>)> value;
    std::array<double, 2> lo{-1.0, -1.0};
    std::array<double, 2> hi{1.0, 1.0};

    double operator()(std::span<const double> x) const { return value(x); }
};

/// Brute-force trapezoid evaluation of I(h) over the declared support box,
/// with at least 40 grid points per oscillation wavelength on every axis.
/// If that resolution would exceed max_points_per_axis, throws
/// std::runtime_error naming the required grid size.
std::complex<double> oscillatory_integral(const QuadraticPhase& phase,
                                          const SmoothCompactFunction& f, double h,
                                          std::size_t max_points_per_axis = 6'000'000);

/// Partial sum of the stationary-phase expansion with `terms` in {1,2,3}.
/// Derivatives of f at 0 are taken by central finite differences with step
/// 1e-4 times the support width per axis.
std::complex<double> sp_asymptotic(const QuadraticPhase& phase, const SmoothCompactFunction& f,
                                   double h, int terms);

/// Gaussian exp(-|x|^2/2) flattened by a smooth plateau cutoff: identically
/// Gaussian for |x_i| <= plateau, zero for |x_i| >= support.  The standard
/// fixture for the error-order experiments.
SmoothCompactFunction gaussian_plateau_fixture(int n, double plateau, double support);

}  // namespace evspec

#endif
