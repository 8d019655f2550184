/** \file spectra.hpp
 *  \brief Equivariant spectra of invariant Laplace and Schrödinger operators:
 *         per-weight 1-D eigensolvers, spectral measures, counting functions,
 *         and the leading-order semiclassical fit.
 *
 *  For a fixed weight direction alpha and semiclassical parameter h (1/h and
 *  alpha/h integers), the invariant operator restricted to the weight space
 *  k = alpha/h reduces to a self-adjoint 1-D problem.  Eigenvalues are kept in
 *  symbol units, i.e. h^2 times the classical eigenvalue, so that they are
 *  directly comparable with reduced-symbol values.
 */

#ifndef EVSPEC_SPECTRA_HPP
#define EVSPEC_SPECTRA_HPP

#include <functional>
#include <vector>

#include "evspec/test_function.hpp"

namespace evspec {

/// Rotation-invariant metric on the two-sphere, described by the profile
/// g''(x) > 0 on (-1,1) with g''(x)*(1-x^2) -> 1 at the poles x = +-1.
/// Construction validates positivity on a dense grid and the boundary limit
/// to within 1e-6.
class S2MetricProfile {
public:
    explicit S2MetricProfile(std::function<double(double)> gdd);

    /// Round metric, g''(x) = 1/(1-x^2).
    static S2MetricProfile round();

    /// Profile value g''(x), finite for |x| < 1.
    double operator()(double x) const { return gdd_(x); }

private:
    std::function<double(double)> gdd_;
};

/// Lowest `count` eigenvalues (classical units) of the weight-k reduction of
/// the Laplacian of an invariant S^2 metric:
///   -(phi'/g'')' + k^2 g'' phi = mu phi  on (-1,1).
///
/// Discretization: symmetric three-point scheme on the uniform interior grid
/// x_j = -1 + j*delta (delta = 2/grid_size), Dirichlet truncation one spacing
/// from each pole; solved by Sturm-sequence bisection on two grid levels
/// (grid_size and 2*grid_size) followed by Richardson extrapolation.
///
/// Throws std::invalid_argument for k = 0 (no confinement), count < 1, or
/// count exceeding the coarse-grid unknowns; std::runtime_error if the profile
/// evaluates non-positive at a quadrature node.
std::vector<double> s2_equivariant_eigenvalues(const S2MetricProfile& profile, int k, int count,
                                               int grid_size);

/// Lowest `count` eigenvalues (symbol units) of the weight-k radial reduction
/// of -h^2 Laplacian + V(r^2) on the plane, via the symmetrized form
/// psi = sqrt(r) phi:
///   -h^2 psi'' + (h^2 (k^2 - 1/4)/r^2 + V(r^2)) psi = lambda psi
/// on (0, R), Dirichlet at r = delta and r = R.  V is a function of s = r^2.
///
/// The eigenvector of the `count`-th eigenvalue is checked post hoc: its mass
/// in the outer 10% of the truncated interval must be < 1e-8, otherwise a
/// std::runtime_error advises enlarging R.
std::vector<double> radial_schrodinger_eigenvalues(const std::function<double(double)>& V, int k,
                                                   double h, int count, double R, int grid_size);

/// Equivariant spectrum at fixed (alpha, h): eigenvalues in symbol units,
/// sorted ascending, repeated according to multiplicity.
struct EquivariantSpectrum {
    double alpha = 1.0;
    double h = 0.01;
    std::vector<double> eigenvalues;
};

/// Validated weight index k = alpha/h.  Requires h > 0 with 1/h integral and
/// alpha/h integral (both to 1e-9), k != 0; throws std::invalid_argument.
int semiclassical_weight(double alpha, double h);

/// Spectrum of h^2 * (S^2 Laplacian) on the weight space k = alpha/h.
EquivariantSpectrum s2_spectrum(const S2MetricProfile& profile, double alpha, double h, int count,
                                int grid_size);

/// Spectrum of -h^2 Laplacian + V(r^2) on the weight space k = alpha/h.
EquivariantSpectrum radial_spectrum(const std::function<double(double)>& V, double alpha, double h,
                                    int count, double R, int grid_size);

/// Spectral measure mu_{alpha/h}(rho) = sum_i rho(lambda_i).  Requires the
/// spectrum to cover the support of rho (largest eigenvalue above it);
/// insufficient coverage throws rather than silently truncating.
double spectral_measure(const EquivariantSpectrum& spec, const TestFunction& rho);

/// Number of eigenvalues <= E (closed sub-level convention).  Coverage rule
/// as in spectral_measure: the largest computed eigenvalue must exceed E.
int counting_function(const EquivariantSpectrum& spec, double E);

/// Result of the leading-order power-law fit of the spectral measure.
struct LeadingFit {
    double power = 0.0;          ///< least-squares slope of log mu vs log h
    double coefficient = 0.0;    ///< coefficient in mu ~ coefficient * h^expected_power
    bool monotone_warning = false;  ///< set when mu is not monotone across the h sweep
};

/// Fit mu_{alpha/h}(rho) ~ C * h^p over a sweep of spectra (>= 3 values of h).
/// Returns the free-slope fit p and the coefficient C obtained with the slope
/// pinned to expected_power.  Non-monotone measures set a warning flag.
LeadingFit leading_coefficient_fit(const std::vector<EquivariantSpectrum>& specs,
                                   const TestFunction& rho, double expected_power);

/// Bottom of the spectrum; throws std::invalid_argument when empty.
double spectral_bottom(const EquivariantSpectrum& spec);

}  // namespace evspec

#endif
