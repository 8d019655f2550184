#include "evspec/reduced_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "evspec/quadrature.hpp"

namespace evspec {

namespace {

/// Maximal intervals where f > 0 inside [lo, hi], located by a uniform scan
/// with bisection refinement of the crossings.
std::vector<std::pair<double, double>> positive_segments(const std::function<double(double)>& f,
                                                         double lo, double hi, int scan_points) {
    std::vector<std::pair<double, double>> segments;
    if (!(hi > lo)) return segments;
    const int m = std::max(scan_points, 16);
    const double step = (hi - lo) / m;
    auto refine = [&](double a, double b) {
        // f(a) and f(b) have opposite signs; bisect to the crossing.
        double fa = f(a);
        for (int iter = 0; iter < 90; ++iter) {
            const double mid = 0.5 * (a + b);
            const double fm = f(mid);
            if ((fa > 0.0) == (fm > 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return 0.5 * (a + b);
    };
    double xprev = lo;
    double fprev = f(lo);
    double open = fprev > 0.0 ? lo : std::numeric_limits<double>::quiet_NaN();
    for (int j = 1; j <= m; ++j) {
        const double x = lo + j * step;
        const double fx = f(x);
        if (fprev <= 0.0 && fx > 0.0) open = refine(x, xprev);
        if (fprev > 0.0 && fx <= 0.0) {
            segments.emplace_back(open, refine(xprev, x));
            open = std::numeric_limits<double>::quiet_NaN();
        }
        xprev = x;
        fprev = fx;
    }
    if (fprev > 0.0 && !std::isnan(open)) segments.emplace_back(open, hi);
    return segments;
}

}  // namespace

double ReducedSymbol::operator()(std::span<const double> x, std::span<const double> u) const {
    if (static_cast<int>(u.size()) != n_)
        throw std::invalid_argument("ReducedSymbol: momentum dimension mismatch");
    if (kind_ == SymbolKind::toric) {
        const MetricHessian mh = metric(x);
        return mh.H_inv.quad_form(u) + mh.H.quad_form(alpha_);
    }
    double p = base_value(x);
    for (int i = 0; i < n_; ++i) p += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    return p;
}

double ReducedSymbol::base_value(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("ReducedSymbol: base point dimension mismatch");
    if (kind_ == SymbolKind::toric) {
        const MetricHessian mh = metric(x);
        return mh.H.quad_form(alpha_);
    }
    std::array<double, 2> s{};
    double p = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double r = x[static_cast<std::size_t>(i)];
        if (r <= 0.0)
            throw std::domain_error("ReducedSymbol: radial coordinate r_" + std::to_string(i) +
                                    " = " + std::to_string(r) + " is outside the positive orthant");
        p += alpha_[static_cast<std::size_t>(i)] * alpha_[static_cast<std::size_t>(i)] / (r * r);
        s[static_cast<std::size_t>(i)] = r * r;
    }
    return p + orthant_->value(std::span<const double>(s.data(), static_cast<std::size_t>(n_)));
}

MetricHessian ReducedSymbol::metric(std::span<const double> x) const {
    if (kind_ != SymbolKind::toric)
        throw std::logic_error("ReducedSymbol: metric() is only defined for the toric kind");
    return metric_hessian(*pot_, x);
}

const SymplecticPotential& ReducedSymbol::potential() const {
    if (kind_ != SymbolKind::toric)
        throw std::logic_error("ReducedSymbol: no symplectic potential for the radial kind");
    return *pot_;
}

const OrthantPotential& ReducedSymbol::orthant_potential() const {
    if (kind_ != SymbolKind::radial_schrodinger)
        throw std::logic_error("ReducedSymbol: no orthant potential for the toric kind");
    return *orthant_;
}

ReducedSymbol toric_reduced_symbol(SymplecticPotential pot, std::vector<double> alpha) {
    const int n = pot.polytope().dimension();
    if (static_cast<int>(alpha.size()) != n)
        throw std::invalid_argument("toric_reduced_symbol: weight dimension mismatch");
    double norm = 0.0;
    for (double a : alpha) norm += a * a;
    if (norm == 0.0)
        throw std::invalid_argument("toric_reduced_symbol: zero weight rejected (non-generic)");
    ReducedSymbol sym;
    sym.kind_ = SymbolKind::toric;
    sym.n_ = n;
    sym.alpha_ = std::move(alpha);
    sym.pot_ = std::make_shared<SymplecticPotential>(std::move(pot));
    return sym;
}

ReducedSymbol schrodinger_reduced_symbol(OrthantPotential V, std::vector<double> alpha) {
    if (V.n != 1 && V.n != 2)
        throw std::invalid_argument("schrodinger_reduced_symbol: only n = 1, 2 supported");
    if (static_cast<int>(alpha.size()) != V.n)
        throw std::invalid_argument("schrodinger_reduced_symbol: weight dimension mismatch");
    for (double a : alpha)
        if (a == 0.0)
            throw std::invalid_argument("schrodinger_reduced_symbol: weight entries must be nonzero");
    if (!V.value) throw std::invalid_argument("schrodinger_reduced_symbol: potential has no value callable");
    ReducedSymbol sym;
    sym.kind_ = SymbolKind::radial_schrodinger;
    sym.n_ = V.n;
    sym.alpha_ = std::move(alpha);
    sym.orthant_ = std::make_shared<OrthantPotential>(std::move(V));
    return sym;
}

namespace {

/// 1-D base integral of fiber(x) over the segments where margin(x) > 0.
/// fiber vanishes like sqrt(margin) at segment ends, handled by the sqrt
/// substitution.
double integrate_segments(const std::function<double(double)>& margin,
                          const std::function<double(double)>& fiber, double lo, double hi,
                          const QuadratureSpec& spec, bool& touches_hi) {
    const auto segments = positive_segments(margin, lo, hi, spec.resolution);
    touches_hi = !segments.empty() && segments.back().second >= hi - 1e-12 * (std::abs(hi) + 1.0);
    const int panels = std::max(8, spec.resolution / 50);
    std::vector<double> parts;
    parts.reserve(segments.size());
    for (const auto& [a, b] : segments)
        parts.push_back(integrate_sqrt_endpoints(fiber, a, b, panels));
    return pairwise_sum(std::move(parts));
}

/// 2-D tensor midpoint integral of f over [lo0,hi0]x[lo1,hi1], counting only
/// points where `inside` holds.  The integrands vanish continuously on the
/// boundary of their support, so the midpoint rule converges cleanly.
double integrate_box_midpoint(const std::function<bool(const std::array<double, 2>&)>& inside,
                              const std::function<double(const std::array<double, 2>&)>& f,
                              std::array<double, 2> lo, std::array<double, 2> hi, int per_axis) {
    const double dx = (hi[0] - lo[0]) / per_axis;
    const double dy = (hi[1] - lo[1]) / per_axis;
    if (dx <= 0.0 || dy <= 0.0) return 0.0;
    std::vector<double> parts;
    parts.reserve(static_cast<std::size_t>(per_axis));
    for (int i = 0; i < per_axis; ++i) {
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(per_axis));
        const double x = lo[0] + (i + 0.5) * dx;
        for (int j = 0; j < per_axis; ++j) {
            const std::array<double, 2> p{x, lo[1] + (j + 0.5) * dy};
            if (!inside(p)) continue;
            row.push_back(f(p));
        }
        parts.push_back(pairwise_sum(std::move(row)));
    }
    return pairwise_sum(std::move(parts)) * dx * dy;
}

}  // namespace

double sublevel_volume(const ReducedSymbol& sym, double E, const QuadratureSpec& spec) {
    if (spec.resolution <= 0) throw std::invalid_argument("sublevel_volume: resolution must be positive");
    const int n = sym.n();

    if (sym.kind() == SymbolKind::toric) {
        if (n == 1) {
            const auto& P = sym.potential().polytope();
            const double lo = P.vertices()[0][0];
            const double hi = P.vertices()[1][0];
            const double pad = 1e-9 * (hi - lo);
            auto margin = [&](double x) {
                const double xs[1] = {x};
                return E - sym.base_value(xs);
            };
            // Fiber {u : u^2 H^{-1} <= E - base} has length 2 sqrt(H * (E - base)).
            auto fiber = [&](double x) {
                const double xs[1] = {x};
                const MetricHessian mh = sym.metric(xs);
                const double c = E - mh.H.quad_form(sym.alpha());
                return c > 0.0 ? 2.0 * std::sqrt(mh.H(0, 0) * c) : 0.0;
            };
            bool unused = false;
            return integrate_segments(margin, fiber, lo + pad, hi - pad, spec, unused);
        }
        // n = 2: fiber {u : u^T H^{-1} u <= c} is an ellipse of area pi*c*sqrt(det H).
        const auto& P = sym.potential().polytope();
        std::array<double, 2> lo{1e300, 1e300}, hi{-1e300, -1e300};
        for (const auto& v : P.vertices()) {
            lo[0] = std::min(lo[0], v[0]);
            lo[1] = std::min(lo[1], v[1]);
            hi[0] = std::max(hi[0], v[0]);
            hi[1] = std::max(hi[1], v[1]);
        }
        const int per_axis = std::max(64, spec.resolution / 10);
        auto inside = [&](const std::array<double, 2>& p) { return P.is_interior(p, 1e-12); };
        auto f = [&](const std::array<double, 2>& p) {
            const MetricHessian mh = sym.metric(p);
            const double c = E - mh.H.quad_form(sym.alpha());
            return c > 0.0 ? std::numbers::pi * c * std::sqrt(mh.H.det()) : 0.0;
        };
        return integrate_box_midpoint(inside, f, lo, hi, per_axis);
    }

    // Radial kind.
    if (n == 1) {
        auto margin = [&](double r) {
            const double rs[1] = {r};
            return E - sym.base_value(rs);
        };
        auto fiber = [&](double r) {
            const double rs[1] = {r};
            const double c = E - sym.base_value(rs);
            return c > 0.0 ? 2.0 * std::sqrt(c) : 0.0;
        };
        bool touches_hi = false;
        const double vol = integrate_segments(margin, fiber, 1e-8, spec.r_max, spec, touches_hi);
        if (touches_hi)
            throw std::runtime_error("sublevel_volume: sub-level set at E = " + std::to_string(E) +
                                     " reaches the radial truncation (volume diverges or r_max too small)");
        return vol;
    }
    // Radial n = 2: fiber area pi * (E - base)   (unit fiber metric).
    auto inside = [&](const std::array<double, 2>& p) { return p[0] > 0.0 && p[1] > 0.0; };
    auto f = [&](const std::array<double, 2>& p) {
        const double c = E - sym.base_value(p);
        return c > 0.0 ? std::numbers::pi * c : 0.0;
    };
    // Check for escape through the truncation box before integrating.
    for (int edge = 0; edge < 32; ++edge) {
        const double w = (edge + 0.5) / 32.0 * spec.r_max;
        const std::array<double, 2> p1{spec.r_max, std::max(w, 1e-8)};
        const std::array<double, 2> p2{std::max(w, 1e-8), spec.r_max};
        if (E - sym.base_value(p1) > 0.0 || E - sym.base_value(p2) > 0.0)
            throw std::runtime_error("sublevel_volume: sub-level set at E = " + std::to_string(E) +
                                     " reaches the radial truncation (volume diverges or r_max too small)");
    }
    // Restrict the box to where the sub-level set can live: r_i >= alpha_i/sqrt(E).
    std::array<double, 2> lo{1e-8, 1e-8}, hi{spec.r_max, spec.r_max};
    if (E > 0.0)
        for (int i = 0; i < 2; ++i)
            lo[static_cast<std::size_t>(i)] =
                std::max(lo[static_cast<std::size_t>(i)],
                         0.9 * std::abs(sym.alpha()[static_cast<std::size_t>(i)]) / std::sqrt(E));
    const int per_axis = std::max(64, spec.resolution / 10);
    return integrate_box_midpoint(inside, f, lo, hi, per_axis);
}

DensityGrid pushforward_density(const ReducedSymbol& sym, double t0, double dt, std::size_t count,
                                const QuadratureSpec& spec) {
    if (dt <= 0.0 || count < 3)
        throw std::invalid_argument("pushforward_density: need dt > 0 and at least three grid nodes");
    std::vector<double> vol(count);
    for (std::size_t j = 0; j < count; ++j) vol[j] = sublevel_volume(sym, t0 + static_cast<double>(j) * dt, spec);
    std::vector<double> q(count);
    q[0] = std::max(0.0, (vol[1] - vol[0]) / dt);
    q[count - 1] = std::max(0.0, (vol[count - 1] - vol[count - 2]) / dt);
    for (std::size_t j = 1; j + 1 < count; ++j)
        q[j] = std::max(0.0, (vol[j + 1] - vol[j - 1]) / (2.0 * dt));
    DensityGrid out;
    out.q = GridFunction(t0, dt, std::move(q));
    out.seed = spec.seed;
    return out;
}

double smeared_measure(const ReducedSymbol& sym, const TestFunction& rho, const QuadratureSpec& spec) {
    const int n = sym.n();
    const double b = rho.support_hi();

    // Tail integral R(c) = integral of rho over [max(c, a), b]; smooth in c.
    auto rho_tail = [&](double c) {
        const double lo = std::max(c, rho.support_lo());
        if (lo >= b) return 0.0;
        return integrate_composite([&](double t) { return rho(t); }, lo, b, 16, 20);
    };

    if (n == 1) {
        // S = int dx w(x) * int rho(v^2 + base(x)) dv with w = sqrt(H) for the
        // toric kind (fiber metric H^{-1}) and w = 1 for the radial kind.
        const bool toric = sym.kind() == SymbolKind::toric;
        double lo, hi;
        if (toric) {
            const auto& P = sym.potential().polytope();
            lo = P.vertices()[0][0] + 1e-9 * P.diameter();
            hi = P.vertices()[1][0] - 1e-9 * P.diameter();
        } else {
            lo = 1e-8;
            hi = spec.r_max;
        }
        auto margin = [&](double x) {
            const double xs[1] = {x};
            return b - sym.base_value(xs);
        };
        auto integrand = [&](double x) {
            const double xs[1] = {x};
            const double base = sym.base_value(xs);
            const double c = b - base;
            if (c <= 0.0) return 0.0;
            const double w = toric ? std::sqrt(sym.metric(xs).H(0, 0)) : 1.0;
            const double vmax = std::sqrt(c);
            const double inner = 2.0 * integrate_composite(
                [&](double v) { return rho(v * v + base); }, 0.0, vmax, 8, 20);
            return w * inner;
        };
        const auto segments = positive_segments(margin, lo, hi, spec.resolution);
        const int panels = std::max(8, spec.resolution / 50);
        std::vector<double> parts;
        for (const auto& [a2, b2] : segments)
            parts.push_back(integrate_composite(integrand, a2, b2, panels, 20));
        return pairwise_sum(std::move(parts));
    }

    // n = 2: the fiber integral is pi * sqrt(det H) * R(base) (toric) or
    // pi * R(base) (radial).
    if (sym.kind() == SymbolKind::toric) {
        const auto& P = sym.potential().polytope();
        std::array<double, 2> lo{1e300, 1e300}, hi{-1e300, -1e300};
        for (const auto& v : P.vertices()) {
            lo[0] = std::min(lo[0], v[0]);
            lo[1] = std::min(lo[1], v[1]);
            hi[0] = std::max(hi[0], v[0]);
            hi[1] = std::max(hi[1], v[1]);
        }
        auto inside = [&](const std::array<double, 2>& p) { return P.is_interior(p, 1e-12); };
        auto f = [&](const std::array<double, 2>& p) {
            const MetricHessian mh = sym.metric(p);
            const double base = mh.H.quad_form(sym.alpha());
            if (base >= b) return 0.0;
            return std::numbers::pi * std::sqrt(mh.H.det()) * rho_tail(base);
        };
        return integrate_box_midpoint(inside, f, lo, hi, std::max(64, spec.resolution / 10));
    }
    auto inside = [&](const std::array<double, 2>& p) { return p[0] > 0.0 && p[1] > 0.0; };
    auto f = [&](const std::array<double, 2>& p) {
        const double base = sym.base_value(p);
        if (base >= b) return 0.0;
        return std::numbers::pi * rho_tail(base);
    };
    std::array<double, 2> lo{1e-8, 1e-8}, hi{spec.r_max, spec.r_max};
    if (b > 0.0)
        for (int i = 0; i < 2; ++i)
            lo[static_cast<std::size_t>(i)] =
                std::max(lo[static_cast<std::size_t>(i)],
                         0.9 * std::abs(sym.alpha()[static_cast<std::size_t>(i)]) / std::sqrt(b));
    return integrate_box_midpoint(inside, f, lo, hi, std::max(64, spec.resolution / 10));
}

}  // namespace evspec
