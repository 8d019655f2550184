#include "evspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "evspec/tridiagonal.hpp"

namespace evspec {

S2MetricProfile::S2MetricProfile(std::function<double(double)> gdd) : gdd_(std::move(gdd)) {
    if (!gdd_) throw std::invalid_argument("S2MetricProfile: empty profile callable");
    // Positivity on a dense grid.
    const int m = 2001;
    for (int j = 0; j <= m; ++j) {
        const double x = -1.0 + 2.0 * j / m;
        const double xi = std::clamp(x, -1.0 + 1e-7, 1.0 - 1e-7);
        if (!(gdd_(xi) > 0.0))
            throw std::invalid_argument("S2MetricProfile: non-positive profile value at x = " +
                                        std::to_string(xi));
    }
    // Pole behavior: g''(x)*(1-x^2) must approach 1.
    for (double s : {-1.0, 1.0}) {
        const double x = s * (1.0 - 1e-8);
        const double limit = gdd_(x) * (1.0 - x * x);
        if (std::abs(limit - 1.0) > 1e-6)
            throw std::invalid_argument("S2MetricProfile: pole limit of g''*(1-x^2) is " +
                                        std::to_string(limit) + " at x = " + std::to_string(x) +
                                        ", expected 1");
    }
}

S2MetricProfile S2MetricProfile::round() {
    return S2MetricProfile([](double x) { return 1.0 / (1.0 - x * x); });
}

namespace {

/// Single-grid lowest eigenvalues of -(p phi')' + q phi = mu phi on a uniform
/// interior grid with Dirichlet ends, via the symmetric three-point scheme.
std::vector<double> sturm_liouville_lowest(const std::function<double(double)>& p,
                                           const std::function<double(double)>& q, double lo,
                                           double hi, int intervals, int count) {
    const double dx = (hi - lo) / intervals;
    const std::size_t m = static_cast<std::size_t>(intervals - 1);
    std::vector<double> diag(m), off(m - 1);
    double p_right = p(lo + 0.5 * dx);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = lo + static_cast<double>(j + 1) * dx;
        const double p_left = p_right;
        p_right = p(x + 0.5 * dx);
        diag[j] = (p_left + p_right) / (dx * dx) + q(x);
        if (j + 1 < m) off[j] = -p_right / (dx * dx);
    }
    Tridiagonal T{std::move(diag), std::move(off)};
    return T.lowest_eigenvalues(count);
}

std::vector<double> richardson_pair(const std::vector<double>& coarse,
                                    const std::vector<double>& fine) {
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

}  // namespace

std::vector<double> s2_equivariant_eigenvalues(const S2MetricProfile& profile, int k, int count,
                                               int grid_size) {
    if (k == 0)
        throw std::invalid_argument(
            "s2_equivariant_eigenvalues: k = 0 has no confining term and is not supported");
    if (count < 1) throw std::invalid_argument("s2_equivariant_eigenvalues: count must be >= 1");
    if (grid_size < 16) throw std::invalid_argument("s2_equivariant_eigenvalues: grid too small");
    if (count > grid_size - 1)
        throw std::invalid_argument("s2_equivariant_eigenvalues: count " + std::to_string(count) +
                                    " exceeds the coarse-grid unknowns " +
                                    std::to_string(grid_size - 1));
    auto gdd_checked = [&](double x) {
        const double g = profile(x);
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::runtime_error("s2_equivariant_eigenvalues: non-positive profile sample at x = " +
                                     std::to_string(x));
        return g;
    };
    auto p = [&](double x) { return 1.0 / gdd_checked(x); };
    auto q = [&](double x) { return static_cast<double>(k) * k * gdd_checked(x); };
    const auto coarse = sturm_liouville_lowest(p, q, -1.0, 1.0, grid_size, count);
    const auto fine = sturm_liouville_lowest(p, q, -1.0, 1.0, 2 * grid_size, count);
    return richardson_pair(coarse, fine);
}

std::vector<double> radial_schrodinger_eigenvalues(const std::function<double(double)>& V, int k,
                                                   double h, int count, double R, int grid_size) {
    if (!V) throw std::invalid_argument("radial_schrodinger_eigenvalues: empty potential callable");
    if (k == 0)
        throw std::invalid_argument(
            "radial_schrodinger_eigenvalues: k = 0 lacks the centrifugal confinement and is not supported");
    if (!(h > 0.0)) throw std::invalid_argument("radial_schrodinger_eigenvalues: h must be positive");
    if (count < 1) throw std::invalid_argument("radial_schrodinger_eigenvalues: count must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("radial_schrodinger_eigenvalues: R must be positive");
    if (grid_size < 16) throw std::invalid_argument("radial_schrodinger_eigenvalues: grid too small");
    if (count > grid_size - 1)
        throw std::invalid_argument("radial_schrodinger_eigenvalues: count " + std::to_string(count) +
                                    " exceeds the coarse-grid unknowns " +
                                    std::to_string(grid_size - 1));

    const double h2 = h * h;
    const double centrifugal = h2 * (static_cast<double>(k) * k - 0.25);
    auto assemble = [&](int intervals) {
        const double dr = R / intervals;
        const std::size_t m = static_cast<std::size_t>(intervals - 1);
        std::vector<double> diag(m), off(m - 1, -h2 / (dr * dr));
        for (std::size_t j = 0; j < m; ++j) {
            const double r = static_cast<double>(j + 1) * dr;
            diag[j] = 2.0 * h2 / (dr * dr) + centrifugal / (r * r) + V(r * r);
        }
        return Tridiagonal{std::move(diag), std::move(off)};
    };

    Tridiagonal coarse_T = assemble(grid_size);
    Tridiagonal fine_T = assemble(2 * grid_size);
    const auto coarse = coarse_T.lowest_eigenvalues(count);
    const auto fine = fine_T.lowest_eigenvalues(count);

    // Truncation check: the highest requested mode must be negligible near R.
    const auto psi = fine_T.eigenvector(fine[static_cast<std::size_t>(count - 1)]);
    double total = 0.0, tail = 0.0;
    const std::size_t cut = static_cast<std::size_t>(0.9 * static_cast<double>(psi.size()));
    for (std::size_t j = 0; j < psi.size(); ++j) {
        total += psi[j] * psi[j];
        if (j >= cut) tail += psi[j] * psi[j];
    }
    if (tail > 1e-8 * total)
        throw std::runtime_error(
            "radial_schrodinger_eigenvalues: eigenfunction tail mass " + std::to_string(tail / total) +
            " at the truncation radius; increase R beyond " + std::to_string(R));

    return richardson_pair(coarse, fine);
}

int semiclassical_weight(double alpha, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("semiclassical_weight: h must be positive");
    const double inv_h = 1.0 / h;
    if (std::abs(inv_h - std::round(inv_h)) > 1e-9 * std::max(1.0, inv_h))
        throw std::invalid_argument("semiclassical_weight: 1/h = " + std::to_string(inv_h) +
                                    " is not an integer");
    const double k_real = alpha * inv_h;
    if (std::abs(k_real - std::round(k_real)) > 1e-9 * std::max(1.0, std::abs(k_real)))
        throw std::invalid_argument("semiclassical_weight: alpha/h = " + std::to_string(k_real) +
                                    " is not an integer");
    const int k = static_cast<int>(std::llround(k_real));
    if (k == 0) throw std::invalid_argument("semiclassical_weight: alpha/h = 0 is non-generic");
    return k;
}

EquivariantSpectrum s2_spectrum(const S2MetricProfile& profile, double alpha, double h, int count,
                                int grid_size) {
    const int k = semiclassical_weight(alpha, h);
    EquivariantSpectrum spec;
    spec.alpha = alpha;
    spec.h = h;
    spec.eigenvalues = s2_equivariant_eigenvalues(profile, k, count, grid_size);
    for (double& lambda : spec.eigenvalues) lambda *= h * h;
    return spec;
}

EquivariantSpectrum radial_spectrum(const std::function<double(double)>& V, double alpha, double h,
                                    int count, double R, int grid_size) {
    const int k = semiclassical_weight(alpha, h);
    EquivariantSpectrum spec;
    spec.alpha = alpha;
    spec.h = h;
    spec.eigenvalues = radial_schrodinger_eigenvalues(V, k, h, count, R, grid_size);
    return spec;
}

namespace {

void require_coverage(const EquivariantSpectrum& spec, double upto, const char* who) {
    if (spec.eigenvalues.empty())
        throw std::invalid_argument(std::string(who) + ": empty spectrum");
    if (spec.eigenvalues.back() <= upto)
        throw std::runtime_error(std::string(who) + ": spectrum reaches only " +
                                 std::to_string(spec.eigenvalues.back()) +
                                 ", insufficient coverage up to " + std::to_string(upto));
}

}  // namespace

double spectral_measure(const EquivariantSpectrum& spec, const TestFunction& rho) {
    require_coverage(spec, rho.support_hi(), "spectral_measure");
    double acc = 0.0;
    for (double lambda : spec.eigenvalues) acc += rho(lambda);
    return acc;
}

int counting_function(const EquivariantSpectrum& spec, double E) {
    require_coverage(spec, E, "counting_function");
    const auto& ev = spec.eigenvalues;
    return static_cast<int>(std::upper_bound(ev.begin(), ev.end(), E) - ev.begin());
}

LeadingFit leading_coefficient_fit(const std::vector<EquivariantSpectrum>& specs,
                                   const TestFunction& rho, double expected_power) {
    if (specs.size() < 3)
        throw std::invalid_argument("leading_coefficient_fit: need at least three h values");
    std::vector<double> log_h(specs.size()), log_mu(specs.size()), mu(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        mu[i] = spectral_measure(specs[i], rho);
        if (!(mu[i] > 0.0))
            throw std::invalid_argument("leading_coefficient_fit: non-positive measure at h = " +
                                        std::to_string(specs[i].h));
        log_h[i] = std::log(specs[i].h);
        log_mu[i] = std::log(mu[i]);
    }

    LeadingFit fit;
    // Free-slope least squares of log mu against log h.
    const double n = static_cast<double>(specs.size());
    const double sx = std::accumulate(log_h.begin(), log_h.end(), 0.0);
    const double sy = std::accumulate(log_mu.begin(), log_mu.end(), 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        sxx += log_h[i] * log_h[i];
        sxy += log_h[i] * log_mu[i];
    }
    fit.power = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    // Coefficient with the slope pinned to the expected power.
    double log_c = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) log_c += log_mu[i] - expected_power * log_h[i];
    fit.coefficient = std::exp(log_c / n);

    // The sweep should be monotone in h when a clean power law holds.
    bool increasing = true, decreasing = true;
    for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
        const bool h_up = specs[i + 1].h > specs[i].h;
        const bool mu_up = mu[i + 1] > mu[i];
        if (h_up != mu_up) increasing = false;
        if (h_up == mu_up) decreasing = false;
    }
    fit.monotone_warning = !(increasing || decreasing);
    return fit;
}

double spectral_bottom(const EquivariantSpectrum& spec) {
    if (spec.eigenvalues.empty()) throw std::invalid_argument("spectral_bottom: empty spectrum");
    return spec.eigenvalues.front();
}

}  // namespace evspec
