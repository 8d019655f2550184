#include "evspec/s2_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace evspec {

AbelPair density_to_abel(const DensityGrid& q, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("density_to_abel: alpha must be positive");
    const GridFunction& g = q.q;
    if (g.size() < 16 || !(g.dx > 0.0))
        throw std::invalid_argument("density_to_abel: density grid too small");

    const double qmax = *std::max_element(g.values.begin(), g.values.end());
    if (!(qmax > 0.0)) throw std::runtime_error("density_to_abel: density has empty support");
    const double threshold = 1e-12 * qmax;
    std::size_t first = g.size();
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (g.values[j] > threshold) {
            first = j;
            break;
        }
    }
    if (first + 12 >= g.size())
        throw std::runtime_error("density_to_abel: support of the density is too thin to shift");

    // The support edge lies within one cell above the first positive node.
    const double dt = g.dx;
    const double c = g.x(first) + 0.5 * dt;

    // Shifted samples D(t~) = alpha*q(t~+c)/2 for t~ = 2dt, 3dt, ...; the
    // first shifted node only interpolates q at nodes at least one full cell
    // above the support edge, where centered differences are reliable again.
    std::vector<double> D;
    for (std::size_t j = 2;; ++j) {
        const double t = c + static_cast<double>(j) * dt;
        if (t > g.x_back() - 0.5 * dt) break;
        D.push_back(0.5 * alpha * g.interp_linear(t));
    }
    if (D.size() < 8)
        throw std::runtime_error("density_to_abel: fewer than eight usable shifted samples");
    AbelPair pair;
    pair.D = GridFunction(2.0 * dt, dt, std::move(D));
    pair.c = c;
    pair.alpha = alpha;
    return pair;
}

namespace {

void require_zero_based(const GridFunction& f, const char* who) {
    if (f.size() < 4) throw std::invalid_argument(std::string(who) + ": need at least four samples");
    if (!(f.dx > 0.0)) throw std::invalid_argument(std::string(who) + ": grid spacing must be positive");
    if (std::abs(f.x0) > 1e-12 * f.dx)
        throw std::invalid_argument(std::string(who) + ": grid must start at t = 0, got x0 = " +
                                    std::to_string(f.x0));
}

}  // namespace

GridFunction abel_forward(const GridFunction& f) {
    require_zero_based(f, "abel_forward");
    const std::size_t m = f.size();
    const double dt = f.dx;
    std::vector<double> A(m, 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double t = static_cast<double>(j) * dt;
        double acc = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            // Cell [y_i, y_{i+1}]; substitute u = t - y, u in [a, b].
            const double b = t - static_cast<double>(i) * dt;
            const double a = b - dt;
            const double sb = std::sqrt(b), sa = std::sqrt(a);
            const double slope = (f.values[i + 1] - f.values[i]) / dt;
            // integral of (f_i + slope*(b-u)) / sqrt(u) over [a, b].
            acc += f.values[i] * 2.0 * (sb - sa) +
                   slope * (b * 2.0 * (sb - sa) - (2.0 / 3.0) * (b * sb - a * sa));
        }
        A[j] = acc;
    }
    return GridFunction(0.0, dt, std::move(A));
}

GridFunction abel_invert(const GridFunction& D) {
    require_zero_based(D, "abel_invert");
    const std::size_t m = D.size();
    const double dt = D.dx;

    // Continuity precheck: a jump of more than half the data range inside a
    // single cell means D is not (Hoelder-)continuous at grid scale.
    const auto [lo_it, hi_it] = std::minmax_element(D.values.begin(), D.values.end());
    const double range = std::max(*hi_it - *lo_it, 1e-300);
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (std::abs(D.values[i + 1] - D.values[i]) > 0.5 * range)
            throw std::runtime_error("abel_invert: increment check failed in cell " +
                                     std::to_string(i) + " (t = " + std::to_string(D.x(i)) +
                                     "): data jumps by more than half its range");

    std::vector<double> slope(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) slope[i] = (D.values[i + 1] - D.values[i]) / dt;

    // Head model on [0, 2dt]: D ~ D(0) + b sqrt(t) + a t through the first
    // three samples.  A piecewise-linear head would miss the sqrt(t) cusp
    // that Abel images of regular data always carry; the model reproduces
    // both the cusped and the smooth case exactly.
    const double d1 = D.values[1] - D.values[0];
    const double d2 = D.values[2] - D.values[0];
    const double sq_dt = std::sqrt(dt);
    const double head_b = (2.0 * d1 - d2) / (sq_dt * (2.0 - std::numbers::sqrt2));
    const double head_a = (d2 - std::numbers::sqrt2 * d1) / (dt * (2.0 - std::numbers::sqrt2));

    std::vector<double> f(m, 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double t = static_cast<double>(j) * dt;
        const double head_end = std::min(2.0 * dt, t);
        // integral of D'(tau)/sqrt(t-tau) over the modeled head:
        //   b/(2 sqrt(tau)) integrates to b*arcsin(sqrt(tau/t)),
        //   the constant a to 2a(sqrt(t) - sqrt(t-tau)).
        double acc = D.values[0] / std::sqrt(t) +
                     head_b * std::asin(std::sqrt(head_end / t)) +
                     head_a * 2.0 * (std::sqrt(t) - std::sqrt(t - head_end));
        double s_hi = std::sqrt(t - head_end);
        for (std::size_t i = 2; i < j; ++i) {
            const double s_lo = std::sqrt(t - static_cast<double>(i + 1) * dt);
            acc += slope[i] * 2.0 * (s_hi - s_lo);
            s_hi = s_lo;
        }
        f[j] = acc / std::numbers::pi;
    }
    f[0] = 2.0 * f[1] - f[2];  // the data does not determine f at the origin
    return GridFunction(0.0, dt, std::move(f));
}

S2MetricProfile recover_profile(const AbelPair& pair, double x_max) {
    if (!(x_max > 0.0 && x_max < 1.0))
        throw std::invalid_argument("recover_profile: window must satisfy 0 < x_max < 1");
    if (!(pair.c > 0.0)) throw std::invalid_argument("recover_profile: bottom constant must be positive");
    if (!(pair.alpha > 0.0)) throw std::invalid_argument("recover_profile: alpha must be positive");
    if (pair.D.size() < 16) throw std::invalid_argument("recover_profile: Abel data too short");

    // Rebase the shifted data onto a 0-started grid, filling the excluded
    // head cells by linear extrapolation.
    const double dt = pair.D.dx;
    const double ratio = pair.D.x0 / dt;
    const auto head = static_cast<std::size_t>(std::llround(ratio));
    if (head < 1 || std::abs(ratio - static_cast<double>(head)) > 1e-9)
        throw std::invalid_argument("recover_profile: shifted grid origin is not a multiple of dt");
    std::vector<double> v(head + pair.D.size());
    for (std::size_t j = 0; j < pair.D.size(); ++j) v[head + j] = pair.D.values[j];
    for (std::size_t i = head; i-- > 0;)
        v[i] = v[head] - static_cast<double>(head - i) * (v[head + 1] - v[head]);
    GridFunction D0(0.0, dt, std::move(v));

    const GridFunction phi = abel_invert(D0);
    const std::size_t m = phi.size();

    // w^{-1}(t_j) = integral_0^{t_j} phi(u)/sqrt(u+c) du.  Substituting
    // u = v^2 gives the smooth integrand 2*sigma(v^2)/sqrt(v^2+c) with
    // sigma(u) = phi(u)*sqrt(u), whose value at 0 is D(0)/pi.
    std::vector<double> psi(m), vgrid(m), xw(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = phi.x(j);
        vgrid[j] = std::sqrt(t);
        const double sigma = j == 0 ? D0.values[0] / std::numbers::pi : phi.values[j] * vgrid[j];
        psi[j] = 2.0 * sigma / std::sqrt(t + pair.c);
    }
    xw[0] = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j)
        xw[j + 1] = xw[j] + 0.5 * (psi[j] + psi[j + 1]) * (vgrid[j + 1] - vgrid[j]);
    for (std::size_t j = 0; j + 1 < m; ++j)
        if (!(xw[j + 1] > xw[j]))
            throw std::runtime_error(
                "recover_profile: recovered w^{-1} is non-monotone near t = " +
                std::to_string(phi.x(j)) + "; the convexity hypothesis fails on this data");
    if (xw.back() <= x_max)
        throw std::runtime_error("recover_profile: data reaches only x = " +
                                 std::to_string(xw.back()) + ", below the requested window " +
                                 std::to_string(x_max));

    // w by bisection on the shape-preserving interpolant of w^{-1}.
    std::vector<double> tgrid(m);
    for (std::size_t j = 0; j < m; ++j) tgrid[j] = phi.x(j);
    const MonotoneCubic w_inv(std::move(tgrid), std::move(xw));

    // Sample g'' = (w + c)/alpha^2 on a uniform grid in xi = x^2 and split
    // off the pole part 1/(1-xi); the smooth remainder extends linearly.
    const int K = 160;
    const double xi_max = x_max * x_max;
    const double inv_a2 = 1.0 / (pair.alpha * pair.alpha);
    std::vector<double> xi(K + 1), rhat(K + 1);
    for (int k = 0; k <= K; ++k) {
        xi[static_cast<std::size_t>(k)] = xi_max * k / K;
        const double x = std::sqrt(xi[static_cast<std::size_t>(k)]);
        const double w = k == 0 ? 0.0 : w_inv.invert(x);
        rhat[static_cast<std::size_t>(k)] =
            (w + pair.c) * inv_a2 - 1.0 / (1.0 - xi[static_cast<std::size_t>(k)]);
    }
    // Tail slope for the continuation, by least squares over the last fifth.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int tail = 0;
    for (int k = 4 * K / 5; k <= K; ++k, ++tail) {
        sx += xi[static_cast<std::size_t>(k)];
        sy += rhat[static_cast<std::size_t>(k)];
        sxx += xi[static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(k)];
        sxy += xi[static_cast<std::size_t>(k)] * rhat[static_cast<std::size_t>(k)];
    }
    const double denom = tail * sxx - sx * sx;
    const double slope = denom != 0.0 ? (tail * sxy - sx * sy) / denom : 0.0;
    const double r_end = rhat.back();

    auto rspline = std::make_shared<CubicSpline>(std::move(xi), std::move(rhat));
    auto gdd = [rspline, xi_max, slope, r_end](double x) {
        const double q = x * x;
        const double smooth = q <= xi_max ? rspline->value(q) : r_end + slope * (q - xi_max);
        return 1.0 / (1.0 - q) + smooth;
    };
    return S2MetricProfile(gdd);
}

}  // namespace evspec
