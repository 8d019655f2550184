/** \file reduced_symbol.hpp
 *  \brief Reduced symbols on the reduced phase space: sub-level volumes,
 *         push-forward densities and smeared integrals.
 */

#ifndef EVSPEC_REDUCED_SYMBOL_HPP
#define EVSPEC_REDUCED_SYMBOL_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "evspec/grid_function.hpp"
#include "evspec/polytope.hpp"
#include "evspec/test_function.hpp"

namespace evspec {

/// A scalar potential V on the positive orthant (coordinates s_i = r_i^2),
/// with a declared domain box used for properness checks.
struct OrthantPotential {
    int n = 1;
    std::function<double(std::span<const double>)> value;
    std::array<double, 2> box_lo{1e-6, 1e-6};
    std::array<double, 2> box_hi{50.0, 50.0};
};

enum class SymbolKind { toric, radial_schrodinger };

/// The reduced symbol p_alpha, evaluatable on its base domain:
///  - toric: p(x, u) = u^T H^{-1}(x) u + alpha^T H(x) alpha on int(P) x R^n;
///  - radial: p(r, u) = sum_i (u_i^2 + alpha_i^2 / r_i^2) + V(r_1^2, ..)
///    on the positive orthant x R^n.
class ReducedSymbol {
public:
    SymbolKind kind() const { return kind_; }
    int n() const { return n_; }
    const std::vector<double>& alpha() const { return alpha_; }

    /// Evaluate p_alpha(x, u); throws std::domain_error outside the base domain.
    double operator()(std::span<const double> x, std::span<const double> u) const;

    /// Momentum-free part alpha^T H(x) alpha (toric) or
    /// sum alpha_i^2/r_i^2 + V(r^2) (radial); the u-fiber minimum at fixed x.
    double base_value(std::span<const double> x) const;

    /// H(x) for the toric kind (throws for radial).
    MetricHessian metric(std::span<const double> x) const;

    const SymplecticPotential& potential() const;
    const OrthantPotential& orthant_potential() const;

    friend ReducedSymbol toric_reduced_symbol(SymplecticPotential pot, std::vector<double> alpha);
    friend ReducedSymbol schrodinger_reduced_symbol(OrthantPotential V, std::vector<double> alpha);

private:
    SymbolKind kind_ = SymbolKind::toric;
    int n_ = 1;
    std::vector<double> alpha_;
    std::shared_ptr<const SymplecticPotential> pot_;
    std::shared_ptr<const OrthantPotential> orthant_;
};

/// Build the toric reduced symbol; rejects alpha = 0 (non-generic weight).
ReducedSymbol toric_reduced_symbol(SymplecticPotential pot, std::vector<double> alpha);

/// Build the radial reduced symbol; rejects alpha entries equal to zero.
ReducedSymbol schrodinger_reduced_symbol(OrthantPotential V, std::vector<double> alpha);

/// Quadrature controls for volume/measure integrals.
struct QuadratureSpec {
    /// Target number of integrand evaluations along each base direction.
    int resolution = 10000;
    /// Monte-Carlo sample count for symbols with no closed-form fiber.
    std::int64_t mc_samples = 2'000'000;
    /// Seed for the (stratified) Monte-Carlo fallback; recorded in outputs.
    std::uint64_t seed = 20260814;
    /// Truncation radius for unbounded base domains (radial kind).
    double r_max = 50.0;
};

/// Lebesgue volume of {(x, u) : p_alpha(x, u) <= E}.  The u-fiber is
/// integrated in closed form (interval length for n=1, ellipse area for
/// n=2), the base integral by composite Gauss-Legendre panels with a
/// square-root substitution in the cells where the fiber degenerates.
/// Throws std::runtime_error naming E when the sub-level set is unbounded.
double sublevel_volume(const ReducedSymbol& sym, double E, const QuadratureSpec& spec = {});

/// Push-forward density of Lebesgue measure under p_alpha, sampled on a
/// uniform t grid: q(t) = d/dt sublevel_volume(t) by centered differences at
/// the grid nodes (one-sided at the ends).  Values below the symbol minimum
/// are zero.
struct DensityGrid {
    GridFunction q;
    std::uint64_t seed = 0;  ///< seed used if the Monte-Carlo fallback ran
};
DensityGrid pushforward_density(const ReducedSymbol& sym, double t0, double dt, std::size_t count,
                                const QuadratureSpec& spec = {});

/// Smeared measure integral rho(p_alpha(x,u)) dx du by direct quadrature
/// over the base and fiber; agrees with the density integral of rho within
/// the documented tolerance.
double smeared_measure(const ReducedSymbol& sym, const TestFunction& rho,
                       const QuadratureSpec& spec = {});

}  // namespace evspec

#endif
