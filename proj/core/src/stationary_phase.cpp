#include "evspec/stationary_phase.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "evspec/quadrature.hpp"

namespace evspec {

QuadraticPhase::QuadraticPhase(const SymMat& A) : A_(A) {
    if (A.n != 1 && A.n != 2) throw std::invalid_argument("QuadraticPhase: dimension must be 1 or 2");
    double scale = 0.0;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (std::abs(A.det()) <= 1e-14 * std::max(1.0, scale * scale))
        throw std::invalid_argument("QuadraticPhase: matrix is singular (degenerate phase)");
    B_ = A.inverse();
    if (A_.inverse_residual(B_) > 1e-12)
        throw std::runtime_error("QuadraticPhase: inverse residual exceeds 1e-12");
    signature_ = A.signature();
}

QuadraticPhase QuadraticPhase::from_entries(int n, std::span<const double> row_major) {
    if ((n == 1 && row_major.size() != 1) || (n == 2 && row_major.size() != 4) || (n != 1 && n != 2))
        throw std::invalid_argument("QuadraticPhase::from_entries: bad entry count for dimension");
    if (SymMat::asymmetry(n, row_major) > 1e-12)
        throw std::invalid_argument("QuadraticPhase::from_entries: matrix asymmetry exceeds 1e-12");
    SymMat A = n == 1 ? SymMat::from_entries(1, row_major[0])
                      : SymMat::from_entries(2, row_major[0],
                                             0.5 * (row_major[1] + row_major[2]), row_major[3]);
    return QuadraticPhase(A);
}

namespace {

/// Grid sizes delivering >= 40 points per local oscillation wavelength of
/// exp(i<Ax,x>/2h) on the support box (and a floor resolving the envelope).
std::array<std::size_t, 2> required_grid(const QuadraticPhase& phase, const SmoothCompactFunction& f,
                                         double h) {
    const int n = phase.dim();
    std::array<double, 2> kmax{0.0, 0.0};
    // |(Ax)_i| is maximized over the box at a corner.
    for (int corner = 0; corner < (1 << n); ++corner) {
        std::array<double, 2> x{};
        for (int i = 0; i < n; ++i)
            x[static_cast<std::size_t>(i)] =
                (corner >> i) & 1 ? f.hi[static_cast<std::size_t>(i)] : f.lo[static_cast<std::size_t>(i)];
        const auto Ax = phase.A().mul(std::span<const double>(x.data(), static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
            kmax[static_cast<std::size_t>(i)] =
                std::max(kmax[static_cast<std::size_t>(i)], std::abs(Ax[static_cast<std::size_t>(i)]) / h);
    }
    std::array<std::size_t, 2> N{1, 1};
    for (int i = 0; i < n; ++i) {
        const double L = f.hi[static_cast<std::size_t>(i)] - f.lo[static_cast<std::size_t>(i)];
        const double wavelength = 2.0 * std::numbers::pi / std::max(kmax[static_cast<std::size_t>(i)], 1e-300);
        const double needed = 40.0 * L / wavelength;
        N[static_cast<std::size_t>(i)] = static_cast<std::size_t>(std::ceil(std::max(needed, 400.0)));
    }
    return N;
}

}  // namespace

std::complex<double> oscillatory_integral(const QuadraticPhase& phase, const SmoothCompactFunction& f,
                                          double h, std::size_t max_points_per_axis) {
    if (!(h > 0.0)) throw std::invalid_argument("oscillatory_integral: h must be positive");
    if (phase.dim() != f.n)
        throw std::invalid_argument("oscillatory_integral: phase/function dimension mismatch");
    const int n = phase.dim();
    const auto N = required_grid(phase, f, h);
    for (int i = 0; i < n; ++i)
        if (N[static_cast<std::size_t>(i)] > max_points_per_axis)
            throw std::runtime_error("oscillatory_integral: axis " + std::to_string(i) + " requires " +
                                     std::to_string(N[static_cast<std::size_t>(i)]) +
                                     " points for 40 per wavelength, above the cap of " +
                                     std::to_string(max_points_per_axis));

    const SymMat& A = phase.A();
    if (n == 1) {
        const std::size_t m = N[0];
        const double dx = (f.hi[0] - f.lo[0]) / static_cast<double>(m);
        std::vector<double> re(m + 1), im(m + 1);
        for (std::size_t j = 0; j <= m; ++j) {
            const double x = f.lo[0] + static_cast<double>(j) * dx;
            const double fx = f.value(std::span<const double>(&x, 1));
            if (fx == 0.0) continue;
            const double w = (j == 0 || j == m) ? 0.5 : 1.0;
            const double ph = 0.5 * A(0, 0) * x * x / h;
            re[j] = w * fx * std::cos(ph);
            im[j] = w * fx * std::sin(ph);
        }
        return {pairwise_sum(std::move(re)) * dx, pairwise_sum(std::move(im)) * dx};
    }

    const std::size_t m0 = N[0], m1 = N[1];
    const double dx = (f.hi[0] - f.lo[0]) / static_cast<double>(m0);
    const double dy = (f.hi[1] - f.lo[1]) / static_cast<double>(m1);
    std::vector<double> row_re(m0 + 1), row_im(m0 + 1);
    for (std::size_t j0 = 0; j0 <= m0; ++j0) {
        const double x = f.lo[0] + static_cast<double>(j0) * dx;
        const double w0 = (j0 == 0 || j0 == m0) ? 0.5 : 1.0;
        double acc_re = 0.0, acc_im = 0.0;
        for (std::size_t j1 = 0; j1 <= m1; ++j1) {
            const double y = f.lo[1] + static_cast<double>(j1) * dy;
            const std::array<double, 2> p{x, y};
            const double fx = f.value(std::span<const double>(p.data(), 2));
            if (fx == 0.0) continue;
            const double w = w0 * ((j1 == 0 || j1 == m1) ? 0.5 : 1.0);
            const double ph = 0.5 * (A(0, 0) * x * x + 2.0 * A(0, 1) * x * y + A(1, 1) * y * y) / h;
            acc_re += w * fx * std::cos(ph);
            acc_im += w * fx * std::sin(ph);
        }
        row_re[j0] = acc_re;
        row_im[j0] = acc_im;
    }
    return {pairwise_sum(std::move(row_re)) * dx * dy, pairwise_sum(std::move(row_im)) * dx * dy};
}

namespace {

/// Central-difference stencils for d^k/dt^k, k = 0..4, as (offset, weight/step^k).
const std::vector<std::pair<int, double>>& stencil(int order) {
    static const std::vector<std::pair<int, double>> table[5] = {
        {{0, 1.0}},
        {{-1, -0.5}, {1, 0.5}},
        {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
        {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
        {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}},
    };
    return table[order];
}

/// Mixed partial d^{o0+o1} f / dx0^{o0} dx1^{o1} at the origin by tensor
/// products of 1-D central stencils.
double partial_at_zero(const SmoothCompactFunction& f, std::array<int, 2> order,
                       std::array<double, 2> step) {
    const int n = f.n;
    double acc = 0.0;
    const auto& s0 = stencil(order[0]);
    const auto& s1 = n == 2 ? stencil(order[1]) : stencil(0);
    for (const auto& [off0, w0] : s0) {
        for (const auto& [off1, w1] : s1) {
            std::array<double, 2> x{off0 * step[0], off1 * step[1]};
            acc += w0 * w1 * f.value(std::span<const double>(x.data(), static_cast<std::size_t>(n)));
        }
    }
    double scale = std::pow(step[0], order[0]);
    if (n == 2) scale *= std::pow(step[1], order[1]);
    return acc / scale;
}

}  // namespace

std::complex<double> sp_asymptotic(const QuadraticPhase& phase, const SmoothCompactFunction& f,
                                   double h, int terms) {
    if (terms < 1 || terms > 3)
        throw std::invalid_argument("sp_asymptotic: terms must lie in {1,2,3}");
    if (!(h > 0.0)) throw std::invalid_argument("sp_asymptotic: h must be positive");
    if (phase.dim() != f.n)
        throw std::invalid_argument("sp_asymptotic: phase/function dimension mismatch");
    const int n = phase.dim();
    const std::array<double, 2> step{1e-4 * (f.hi[0] - f.lo[0]), 1e-4 * (f.hi[1] - f.lo[1])};

    std::map<std::array<int, 2>, double> cache;
    auto partial = [&](std::array<int, 2> order) {
        auto it = cache.find(order);
        if (it != cache.end()) return it->second;
        const double v = partial_at_zero(f, order, step);
        cache.emplace(order, v);
        return v;
    };
    auto order_of = [&](std::initializer_list<int> axes) {
        std::array<int, 2> o{0, 0};
        for (int a : axes) ++o[static_cast<std::size_t>(a)];
        return o;
    };

    const SymMat& B = phase.B();
    // Jets (b(D)^j f)(0) for j = 0, 1, 2 with b(D) = -sum B_ij d_i d_j.
    std::array<double, 3> jet{};
    jet[0] = partial({0, 0});
    if (terms >= 2) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += B(i, j) * partial(order_of({i, j}));
        jet[1] = -acc;
    }
    if (terms >= 3) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        acc += B(i, j) * B(k, l) * partial(order_of({i, j, k, l}));
        jet[2] = acc;
    }

    const std::complex<double> minus_ih_half{0.0, -0.5 * h};
    std::complex<double> series = 0.0;
    std::complex<double> power = 1.0;
    double factorial = 1.0;
    for (int j = 0; j < terms; ++j) {
        if (j > 0) {
            power *= minus_ih_half;
            factorial *= j;
        }
        series += power * jet[static_cast<std::size_t>(j)] / factorial;
    }

    const double pref = std::pow(2.0 * std::numbers::pi * h, 0.5 * n) /
                        std::sqrt(std::abs(phase.A().det()));
    const std::complex<double> phase_factor =
        std::polar(1.0, std::numbers::pi * phase.signature() / 4.0);
    return pref * phase_factor * series;
}

SmoothCompactFunction gaussian_plateau_fixture(int n, double plateau, double support) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("gaussian_plateau_fixture: dimension must be 1 or 2");
    if (!(0.0 < plateau && plateau < support))
        throw std::invalid_argument("gaussian_plateau_fixture: need 0 < plateau < support");
    auto ramp = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    auto cutoff = [=](double t) {
        const double s = (std::abs(t) - plateau) / (support - plateau);
        if (s <= 0.0) return 1.0;
        if (s >= 1.0) return 0.0;
        const double up = ramp(1.0 - s);
        return up / (up + ramp(s));
    };
    SmoothCompactFunction f;
    f.n = n;
    f.lo = {-support, -support};
    f.hi = {support, support};
    f.value = [=](std::span<const double> x) {
        double r2 = 0.0, chi = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            r2 += x[i] * x[i];
            chi *= cutoff(x[i]);
        }
        return chi == 0.0 ? 0.0 : std::exp(-0.5 * r2) * chi;
    };
    return f;
}

}  // namespace evspec
