#include "evspec/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "evspec/grid_function.hpp"

namespace evspec {

namespace {

std::string point_to_string(std::span<const double> x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    a = std::abs(a);
    b = std::abs(b);
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

LabeledPolytope::LabeledPolytope(int dimension, std::vector<Facet> facets)
    : n_(dimension), facets_(std::move(facets)) {
    validate_and_build();
}

void LabeledPolytope::validate_and_build() {
    if (n_ != 1 && n_ != 2)
        throw std::invalid_argument("LabeledPolytope: only dimensions 1 and 2 are supported");
    if (facets_.size() < static_cast<std::size_t>(n_ + 1))
        throw std::invalid_argument("LabeledPolytope: too few facets to bound a polytope");

    for (std::size_t i = 0; i < facets_.size(); ++i) {
        const Facet& f = facets_[i];
        if (static_cast<int>(f.eta0.size()) != n_)
            throw std::invalid_argument("LabeledPolytope: facet normal dimension mismatch at facet " +
                                        std::to_string(i));
        if (f.label < 1)
            throw std::invalid_argument("LabeledPolytope: label must be a positive integer at facet " +
                                        std::to_string(i));
        std::int64_t g = 0;
        for (std::int64_t c : f.eta0) g = gcd64(g, c);
        if (g != 1)
            throw std::invalid_argument("LabeledPolytope: normal at facet " + std::to_string(i) +
                                        " is not primitive (gcd = " + std::to_string(g) + ")");
    }

    const double tol = 1e-9;
    if (n_ == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const Facet& f : facets_) {
            const double eta = static_cast<double>(f.label) * static_cast<double>(f.eta0[0]);
            // l(x) = eta*x - offset >= 0.
            if (eta > 0.0)
                lo = std::max(lo, f.offset / eta);
            else
                hi = std::min(hi, f.offset / eta);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("LabeledPolytope: interval is unbounded");
        if (hi - lo <= tol)
            throw std::invalid_argument("LabeledPolytope: interval has empty interior");
        vertices_ = {{lo, 0.0}, {hi, 0.0}};
        return;
    }

    // n = 2: enumerate candidate vertices as intersections of facet planes
    // x . eta_i = offset_i, keep the ones on the polytope.
    std::vector<std::array<double, 2>> verts;
    std::vector<std::vector<std::size_t>> vert_facets;
    const std::size_t d = facets_.size();
    for (std::size_t i = 0; i < d; ++i) {
        const std::vector<double> ei = labeled_normal(i);
        for (std::size_t j = i + 1; j < d; ++j) {
            const std::vector<double> ej = labeled_normal(j);
            const double det = ei[0] * ej[1] - ei[1] * ej[0];
            if (std::abs(det) < 1e-14) continue;
            const std::array<double, 2> p = {
                (facets_[i].offset * ej[1] - facets_[j].offset * ei[1]) / det,
                (ei[0] * facets_[j].offset - ej[0] * facets_[i].offset) / det};
            const std::vector<double> l = affine_defining_functions(*this, p);
            const double scale = 1.0 + std::abs(p[0]) + std::abs(p[1]);
            bool inside = true;
            std::vector<std::size_t> active;
            for (std::size_t k = 0; k < d; ++k) {
                if (l[k] < -tol * scale) inside = false;
                if (std::abs(l[k]) <= tol * scale) active.push_back(k);
            }
            if (!inside) continue;
            // Deduplicate coincident intersection points.
            bool duplicate = false;
            for (const auto& q : verts)
                if (std::hypot(q[0] - p[0], q[1] - p[1]) < 1e-9 * scale) duplicate = true;
            if (duplicate) continue;
            verts.push_back(p);
            vert_facets.push_back(active);
        }
    }
    if (verts.size() < 3)
        throw std::invalid_argument("LabeledPolytope: fewer than three vertices; polytope is empty, "
                                    "unbounded or degenerate");

    for (std::size_t v = 0; v < verts.size(); ++v)
        if (vert_facets[v].size() != 2)
            throw std::invalid_argument("LabeledPolytope: vertex " + std::to_string(v) +
                                        " lies on " + std::to_string(vert_facets[v].size()) +
                                        " facets; polytope is not simple");

    // Every facet must support an edge (two vertices), otherwise the facet
    // list is redundant and the defining data is inconsistent.
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t touching = 0;
        for (const auto& act : vert_facets)
            touching += std::count(act.begin(), act.end(), k);
        if (touching != 2)
            throw std::invalid_argument("LabeledPolytope: facet " + std::to_string(k) +
                                        " does not support exactly one edge (redundant or unbounded data)");
    }

    // Order counterclockwise around the centroid.
    std::array<double, 2> c{0.0, 0.0};
    for (const auto& v : verts) {
        c[0] += v[0] / static_cast<double>(verts.size());
        c[1] += v[1] / static_cast<double>(verts.size());
    }
    std::sort(verts.begin(), verts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    double area2 = 0.0;
    for (std::size_t v = 0; v < verts.size(); ++v) {
        const auto& p = verts[v];
        const auto& q = verts[(v + 1) % verts.size()];
        area2 += p[0] * q[1] - q[0] * p[1];
    }
    if (area2 <= tol)
        throw std::invalid_argument("LabeledPolytope: polygon has empty interior (area ~ " +
                                    std::to_string(0.5 * area2) + ")");
    vertices_ = std::move(verts);
}

std::vector<double> LabeledPolytope::labeled_normal(std::size_t i) const {
    if (i >= facets_.size()) throw std::out_of_range("LabeledPolytope: facet index out of range");
    std::vector<double> eta(static_cast<std::size_t>(n_));
    for (int a = 0; a < n_; ++a)
        eta[static_cast<std::size_t>(a)] =
            static_cast<double>(facets_[i].label) * static_cast<double>(facets_[i].eta0[static_cast<std::size_t>(a)]);
    return eta;
}

bool LabeledPolytope::is_interior(std::span<const double> x, double margin) const {
    const std::vector<double> l = affine_defining_functions(*this, x);
    for (double v : l)
        if (v <= margin) return false;
    return true;
}

double LabeledPolytope::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, std::hypot(vertices_[i][0] - vertices_[j][0],
                                             vertices_[i][1] - vertices_[j][1]));
    return best;
}

LabeledPolytope LabeledPolytope::interval(double lo, double hi) {
    return LabeledPolytope(1, {Facet{{1}, 1, lo}, Facet{{-1}, 1, -hi}});
}

LabeledPolytope LabeledPolytope::unit_simplex() {
    return LabeledPolytope(2, {Facet{{1, 0}, 1, 0.0}, Facet{{0, 1}, 1, 0.0}, Facet{{-1, -1}, 1, -1.0}});
}

LabeledPolytope LabeledPolytope::rectangle(double a, double b) {
    return LabeledPolytope(2, {Facet{{1, 0}, 1, 0.0}, Facet{{0, 1}, 1, 0.0},
                               Facet{{-1, 0}, 1, -a}, Facet{{0, -1}, 1, -b}});
}

std::vector<double> affine_defining_functions(const LabeledPolytope& P, std::span<const double> x) {
    if (static_cast<int>(x.size()) != P.dimension())
        throw std::invalid_argument("affine_defining_functions: point dimension " +
                                    std::to_string(x.size()) + " does not match polytope dimension " +
                                    std::to_string(P.dimension()));
    std::vector<double> l(P.facet_count());
    for (std::size_t i = 0; i < P.facet_count(); ++i) {
        const std::vector<double> eta = P.labeled_normal(i);
        double v = -P.facets()[i].offset;
        for (int a = 0; a < P.dimension(); ++a) v += x[static_cast<std::size_t>(a)] * eta[static_cast<std::size_t>(a)];
        l[i] = v;
    }
    return l;
}

PotentialEval canonical_potential(const LabeledPolytope& P, std::span<const double> x) {
    const std::vector<double> l = affine_defining_functions(P, x);
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] <= 0.0)
            throw std::domain_error("canonical_potential: point " + point_to_string(x) +
                                    " is not interior (l_" + std::to_string(i) + " = " +
                                    std::to_string(l[i]) + ")");
    PotentialEval out;
    out.hessian = SymMat::zero(P.dimension());
    for (std::size_t i = 0; i < l.size(); ++i) {
        const std::vector<double> eta = P.labeled_normal(i);
        const double logl = std::log(l[i]);
        out.value += 0.5 * (l[i] * logl - l[i]);
        for (int a = 0; a < P.dimension(); ++a) {
            out.gradient[static_cast<std::size_t>(a)] += 0.5 * eta[static_cast<std::size_t>(a)] * logl;
            for (int b = 0; b < P.dimension(); ++b)
                out.hessian(a, b) += 0.5 * eta[static_cast<std::size_t>(a)] * eta[static_cast<std::size_t>(b)] / l[i];
        }
    }
    return out;
}

C2Function C2Function::zero(int n) {
    C2Function f;
    f.value = [](std::span<const double>) { return 0.0; };
    f.gradient = [n](std::span<const double>) { return std::vector<double>(static_cast<std::size_t>(n), 0.0); };
    f.hessian = [n](std::span<const double>) { return SymMat::zero(n); };
    return f;
}

C2Function C2Function::quadratic(const SymMat& Q) {
    C2Function f;
    f.value = [Q](std::span<const double> x) { return 0.5 * Q.quad_form(x); };
    f.gradient = [Q](std::span<const double> x) {
        const std::array<double, 2> g = Q.mul(x);
        std::vector<double> out(static_cast<std::size_t>(Q.n));
        for (int a = 0; a < Q.n; ++a) out[static_cast<std::size_t>(a)] = g[static_cast<std::size_t>(a)];
        return out;
    };
    f.hessian = [Q](std::span<const double>) { return Q; };
    return f;
}

C2Function C2Function::from_samples_1d(std::vector<double> x, std::vector<double> y) {
    auto spline = std::make_shared<CubicSpline>(std::move(x), std::move(y));
    C2Function f;
    f.value = [spline](std::span<const double> p) { return spline->value(p[0]); };
    f.gradient = [spline](std::span<const double> p) { return std::vector<double>{spline->derivative(p[0])}; };
    f.hessian = [spline](std::span<const double> p) {
        return SymMat::from_entries(1, spline->second_derivative(p[0]));
    };
    return f;
}

SymplecticPotential::SymplecticPotential(LabeledPolytope polytope, C2Function correction)
    : polytope_(std::move(polytope)), correction_(std::move(correction)) {
    if (!correction_.value || !correction_.hessian)
        throw std::invalid_argument("SymplecticPotential: correction must provide value and hessian callables");
}

SymplecticPotential SymplecticPotential::canonical(LabeledPolytope polytope) {
    const int n = polytope.dimension();
    return SymplecticPotential(std::move(polytope), C2Function::zero(n));
}

MetricHessian metric_hessian(const SymplecticPotential& pot, std::span<const double> x) {
    const PotentialEval base = canonical_potential(pot.polytope(), x);
    SymMat H = base.hessian;
    const SymMat Hc = pot.correction().hessian(x);
    const double cv = pot.correction().value(x);
    if (!std::isfinite(cv))
        throw std::domain_error("metric_hessian: correction is not finite at " + point_to_string(x));
    H += Hc;
    if (H.min_eigenvalue() <= 0.0)
        throw std::domain_error("metric_hessian: Hessian is not positive definite at " + point_to_string(x));
    MetricHessian out{H, H.inverse()};
    if (H.inverse_residual(out.H_inv) > 1e-12 * (1.0 + std::abs(H.trace())))
        throw std::runtime_error("metric_hessian: inverse consistency check failed at " + point_to_string(x));
    return out;
}

std::vector<double> boundary_ratio(const SymplecticPotential& pot, std::size_t facet_index,
                                   const std::vector<std::vector<double>>& points) {
    const LabeledPolytope& P = pot.polytope();
    if (facet_index >= P.facet_count())
        throw std::out_of_range("boundary_ratio: facet index " + std::to_string(facet_index) +
                                " out of range (facet count " + std::to_string(P.facet_count()) + ")");
    const std::vector<double> eta = P.labeled_normal(facet_index);
    std::vector<double> out;
    out.reserve(points.size());
    for (const std::vector<double>& x : points) {
        const std::vector<double> l = affine_defining_functions(P, x);
        const MetricHessian mh = metric_hessian(pot, x);
        out.push_back(mh.H_inv.quad_form(eta) / (2.0 * l[facet_index]));
    }
    return out;
}

}  // namespace evspec
