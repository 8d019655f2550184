#include "evspec/polygon_recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "evspec/quadrature.hpp"
#include "evspec/small_linalg.hpp"

namespace evspec {

namespace {

std::string direction_to_string(std::span<const double> u) {
    std::string s = "(";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(u[i]);
    }
    return s + ")";
}

std::array<double, 2> sub(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return {a[0] - b[0], a[1] - b[1]};
}

double cross(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

/// One quadrature level of the heat integral: Gauss-Legendre panels on
/// [0,1]^2 graded toward all four square edges (every chart below sends the
/// square boundary into the polygon boundary or a measure-zero seam, so the
/// exp(-t l) layers always sit at panel-refined edges).  `chart` maps
/// (s1, s2) to a point and the local area Jacobian.
double integrate_square(const std::function<std::array<double, 3>(double, double)>& chart,
                        const std::function<double(std::span<const double>)>& f, double w0,
                        int order) {
    const std::vector<double> edges = graded_edges_both(w0);
    const GaussLegendre& gl = GaussLegendre::get(order);
    const std::size_t panels = edges.size() - 1;
    std::vector<double> contributions;
    contributions.reserve(panels * panels * gl.nodes.size() * gl.nodes.size());
    for (std::size_t pi = 0; pi < panels; ++pi) {
        const double a1 = edges[pi], h1 = edges[pi + 1] - edges[pi];
        for (std::size_t pj = 0; pj < panels; ++pj) {
            const double a2 = edges[pj], h2 = edges[pj + 1] - edges[pj];
            for (std::size_t qi = 0; qi < gl.nodes.size(); ++qi) {
                const double s1 = a1 + 0.5 * h1 * (1.0 + gl.nodes[qi]);
                const double w1 = 0.5 * h1 * gl.weights[qi];
                for (std::size_t qj = 0; qj < gl.nodes.size(); ++qj) {
                    const double s2 = a2 + 0.5 * h2 * (1.0 + gl.nodes[qj]);
                    const double w2 = 0.5 * h2 * gl.weights[qj];
                    const auto [x, y, jac] = chart(s1, s2);
                    const std::array<double, 2> p{x, y};
                    contributions.push_back(w1 * w2 * jac * f(p));
                }
            }
        }
    }
    return pairwise_sum(std::move(contributions));
}

/// Collapsed-corner chart of the triangle (a, b, c): s2 = 1 contracts to c,
/// the edges s1 = 0, s1 = 1, s2 = 0 map onto the sides a-c, b-c, a-b.
std::function<std::array<double, 3>(double, double)> triangle_chart(std::array<double, 2> a,
                                                                    std::array<double, 2> b,
                                                                    std::array<double, 2> c) {
    const std::array<double, 2> e1 = sub(b, a);
    const std::array<double, 2> e2 = sub(c, a);
    const double area2 = std::abs(cross(e1, e2));
    return [=](double s1, double s2) -> std::array<double, 3> {
        const double r = s1 * (1.0 - s2);
        return {a[0] + e1[0] * r + e2[0] * s2, a[1] + e1[1] * r + e2[1] * s2,
                area2 * (1.0 - s2)};
    };
}

/// Bilinear chart of the quadrilateral (v0, v1, v2, v3) in cyclic order; the
/// Jacobian is affine in (s1, s2) and stays positive for convex input.
std::function<std::array<double, 3>(double, double)> quad_chart(
    const std::vector<std::array<double, 2>>& v) {
    return [v](double s1, double s2) -> std::array<double, 3> {
        const double x = (1.0 - s2) * ((1.0 - s1) * v[0][0] + s1 * v[1][0]) +
                         s2 * ((1.0 - s1) * v[3][0] + s1 * v[2][0]);
        const double y = (1.0 - s2) * ((1.0 - s1) * v[0][1] + s1 * v[1][1]) +
                         s2 * ((1.0 - s1) * v[3][1] + s1 * v[2][1]);
        const std::array<double, 2> d1{(1.0 - s2) * (v[1][0] - v[0][0]) + s2 * (v[2][0] - v[3][0]),
                                       (1.0 - s2) * (v[1][1] - v[0][1]) + s2 * (v[2][1] - v[3][1])};
        const std::array<double, 2> d2{(1.0 - s1) * (v[3][0] - v[0][0]) + s1 * (v[2][0] - v[1][0]),
                                       (1.0 - s1) * (v[3][1] - v[0][1]) + s1 * (v[2][1] - v[1][1])};
        return {x, y, std::abs(cross(d1, d2))};
    };
}

/// One refinement level over the whole polygon: triangles get a single chart,
/// quadrilaterals the bilinear chart, larger polygons a centroid fan whose
/// outer edges (the polygon boundary) lie at s1 = 1 of each triangle chart.
double heat_level(const std::vector<std::array<double, 2>>& verts,
                  const std::function<double(std::span<const double>)>& f, double w0, int order) {
    const std::size_t m = verts.size();
    if (m == 3) {
        return integrate_square(triangle_chart(verts[0], verts[1], verts[2]), f, w0, order);
    }
    if (m == 4) {
        return integrate_square(quad_chart(verts), f, w0, order);
    }
    std::array<double, 2> centroid{0.0, 0.0};
    for (const auto& v : verts) {
        centroid[0] += v[0] / static_cast<double>(m);
        centroid[1] += v[1] / static_cast<double>(m);
    }
    std::vector<double> parts;
    parts.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        parts.push_back(integrate_square(triangle_chart(centroid, verts[i], verts[(i + 1) % m]),
                                         f, w0, order));
    }
    return pairwise_sum(std::move(parts));
}

/// Neville extrapolation of (x_k, y_k) to x = 0.
double neville_at_zero(std::span<const double> x, std::span<const double> y) {
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    return p[0];
}

}  // namespace

double heat_integral(const SymplecticPotential& pot, std::span<const double> u, double t) {
    const LabeledPolytope& P = pot.polytope();
    if (P.dimension() != 2) {
        throw std::invalid_argument("heat_integral: only 2-dimensional polytopes are supported");
    }
    if (u.size() != 2) {
        throw std::invalid_argument("heat_integral: direction dimension mismatch");
    }
    if (!(t > 0.0)) {
        throw std::invalid_argument("heat_integral: t must be positive, got " + std::to_string(t));
    }
    if (norm2(u) == 0.0) {
        throw std::invalid_argument("heat_integral: direction u must be nonzero");
    }

    const auto f = [&](std::span<const double> x) {
        const MetricHessian mh = metric_hessian(pot, x);
        return std::exp(-0.5 * t * mh.H_inv.quad_form(u));
    };

    // The exp(-t l) layer has physical width |u|^{-2}/t along the facet with
    // labeled normal +-u; in chart coordinates widths rescale by at most the
    // diameter, so a first panel of width ~1/(t*diam) resolves it for the
    // probe directions of interest (|u| >= 1).
    const double diam = P.diameter();
    const double w0 = std::clamp(1.0 / (t * diam), 1e-9, 0.2);
    const double coarse = heat_level(P.vertices(), f, w0, 10);
    const double fine = heat_level(P.vertices(), f, 0.5 * w0, 14);

    const double atol = 1e-13 * diam * diam;
    if (std::abs(coarse - fine) > 1e-3 * std::max(std::abs(fine), atol)) {
        throw std::runtime_error(
            "heat_integral: refinement levels disagree at t = " + std::to_string(t) +
            ", u = " + direction_to_string(u) + " (" + std::to_string(coarse) + " vs " +
            std::to_string(fine) + "); the boundary layer is unresolved");
    }
    return fine;
}

std::vector<double> default_t_schedule() {
    std::vector<double> t;
    for (int k = 4; k <= 14; ++k) t.push_back(std::pow(2.0, k));
    return t;
}

FacetDetection detect_facets(const HeatOracle& oracle, int normal_bound,
                             std::span<const double> t_schedule, double diameter_hint) {
    if (normal_bound < 1) {
        throw std::invalid_argument("detect_facets: normal_bound must be at least 1");
    }
    if (t_schedule.size() < 4) {
        throw std::invalid_argument("detect_facets: need at least 4 schedule points");
    }
    for (std::size_t k = 0; k < t_schedule.size(); ++k) {
        if (!(t_schedule[k] > 0.0) || (k > 0 && t_schedule[k] <= t_schedule[k - 1])) {
            throw std::invalid_argument("detect_facets: t schedule must be positive increasing");
        }
    }
    if (!(diameter_hint > 0.0)) {
        throw std::invalid_argument("detect_facets: diameter_hint must be positive");
    }

    const double theta = 1e-3 * diameter_hint;
    FacetDetection out;
    const std::int64_t bound = normal_bound;
    for (std::int64_t a = -bound; a <= bound; ++a) {
        for (std::int64_t b = -bound; b <= bound; ++b) {
            if (a == 0 && b == 0) continue;
            if (!(a > 0 || (a == 0 && b > 0))) continue;  // one representative per +-pair
            if (a * a + b * b > bound * bound) continue;
            if (std::gcd(std::abs(a), std::abs(b)) != 1) continue;

            const std::array<double, 2> u{static_cast<double>(a), static_cast<double>(b)};
            // Extrapolate y = t*I(t) to t = infinity via Neville in 1/t over
            // the last (up to) 6 schedule points; the error estimate is the
            // change when the oldest point of the window is dropped.
            const std::size_t window = std::min<std::size_t>(6, t_schedule.size());
            const std::size_t start = t_schedule.size() - window;
            std::vector<double> xs(window), ys(window);
            for (std::size_t k = 0; k < window; ++k) {
                const double t = t_schedule[start + k];
                xs[k] = 1.0 / t;
                ys[k] = t * oracle(u, t);
            }
            const double est = neville_at_zero(xs, ys);
            const double dropped =
                neville_at_zero(std::span(xs).subspan(1), std::span(ys).subspan(1));
            const double err = std::abs(est - dropped);

            if (err > std::max(0.02 * std::abs(est), 0.1 * theta)) {
                out.undecided.push_back({a, b});
            } else if (est > theta) {
                out.signatures.push_back({{a, b}, est, true});
            }
        }
    }
    return out;
}

double Polygon::area() const {
    double twice = 0.0;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
        twice += cross(vertices[i], vertices[(i + 1) % m]);
    }
    return 0.5 * twice;
}

std::array<double, 2> Polygon::centroid() const {
    const std::size_t m = vertices.size();
    double cx = 0.0, cy = 0.0, twice = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % m];
        const double w = cross(p, q);
        twice += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    return {cx / (3.0 * twice), cy / (3.0 * twice)};
}

std::pair<Polygon, Polygon> minkowski_polygon(std::span<const FacetSignature> signatures,
                                              double closure_tol, double repair_cap) {
    const std::size_t m = signatures.size();
    if (m < 3) {
        throw std::invalid_argument("minkowski_polygon: need at least 3 facet classes, got " +
                                    std::to_string(m));
    }
    std::vector<std::array<double, 2>> n_unit(m);
    std::vector<double> length(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& s = signatures[i];
        const double nn = std::hypot(static_cast<double>(s.normal[0]),
                                     static_cast<double>(s.normal[1]));
        if (nn == 0.0 || !(s.lattice_volume > 0.0)) {
            throw std::invalid_argument("minkowski_polygon: signature " + std::to_string(i) +
                                        " has a zero normal or nonpositive volume");
        }
        n_unit[i] = {static_cast<double>(s.normal[0]) / nn, static_cast<double>(s.normal[1]) / nn};
        length[i] = s.lattice_volume * nn;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (std::abs(cross(n_unit[i], n_unit[j])) < 1e-9) {
                throw std::invalid_argument(
                    "minkowski_polygon: signatures " + std::to_string(i) + " and " +
                    std::to_string(j) +
                    " have parallel normals; the sign ambiguity cannot be resolved");
            }
        }
    }

    // Brute-force sign search (the first sign is pinned to +1; the global
    // flip only swaps the polygon with its reflection, which we return
    // anyway).  Keep the assignment with the smallest closure defect.
    const double total = std::accumulate(length.begin(), length.end(), 0.0);
    std::vector<int> best_eps;
    double best_defect = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
        std::vector<int> eps(m, 1);
        for (std::size_t i = 1; i < m; ++i) {
            if (mask & (std::uint64_t{1} << (i - 1))) eps[i] = -1;
        }
        double rx = 0.0, ry = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            rx += eps[i] * length[i] * n_unit[i][0];
            ry += eps[i] * length[i] * n_unit[i][1];
        }
        const double defect = std::hypot(rx, ry);
        if (defect < best_defect) {
            best_defect = defect;
            best_eps = eps;
        }
    }

    std::vector<double> len = length;
    if (best_defect > closure_tol * total) {
        if (best_defect > repair_cap * total) {
            throw std::runtime_error("minkowski_polygon: no sign assignment closes the edge "
                                     "loop (best defect " +
                                     std::to_string(best_defect) + " vs total length " +
                                     std::to_string(total) + "); signatures are inconsistent");
        }
        // Detected volumes carry percent-level errors, so restore closure by
        // the minimum-norm length correction: minimizing sum dL_i^2 under
        // sum (L_i + dL_i) eps_i n_i = 0 gives dL_i = -eps_i n_i . mu with
        // M mu = r, M = sum n_i n_i^T.
        SymMat M = SymMat::zero(2);
        double rx = 0.0, ry = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            M(0, 0) += n_unit[i][0] * n_unit[i][0];
            M(0, 1) += n_unit[i][0] * n_unit[i][1];
            M(1, 0) += n_unit[i][0] * n_unit[i][1];
            M(1, 1) += n_unit[i][1] * n_unit[i][1];
            rx += best_eps[i] * length[i] * n_unit[i][0];
            ry += best_eps[i] * length[i] * n_unit[i][1];
        }
        const std::array<double, 2> r{rx, ry};
        const std::array<double, 2> mu = M.inverse().mul(r);
        for (std::size_t i = 0; i < m; ++i) {
            len[i] -= best_eps[i] * (n_unit[i][0] * mu[0] + n_unit[i][1] * mu[1]);
            if (!(len[i] > 0.0)) {
                throw std::runtime_error(
                    "minkowski_polygon: closure repair drives edge " + std::to_string(i) +
                    " to nonpositive length; signatures are inconsistent");
            }
        }
    }

    // Outward normals sorted by angle give the edges of a convex polygon in
    // counterclockwise order; each edge is the normal rotated by +90 degrees.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double ai = std::atan2(best_eps[i] * n_unit[i][1], best_eps[i] * n_unit[i][0]);
        const double aj = std::atan2(best_eps[j] * n_unit[j][1], best_eps[j] * n_unit[j][0]);
        return ai < aj;
    });

    Polygon poly;
    poly.vertices.assign(1, {0.0, 0.0});
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const std::size_t i = order[k];
        const std::array<double, 2> edge{-best_eps[i] * len[i] * n_unit[i][1],
                                         best_eps[i] * len[i] * n_unit[i][0]};
        const auto& last = poly.vertices.back();
        poly.vertices.push_back({last[0] + edge[0], last[1] + edge[1]});
    }
    if (poly.area() < 0.0) {
        std::reverse(poly.vertices.begin() + 1, poly.vertices.end());
    }

    Polygon reflected;
    reflected.vertices.reserve(m);
    for (const auto& v : poly.vertices) reflected.vertices.push_back({-v[0], -v[1]});
    return {poly, reflected};
}

std::vector<FacetSignature> exact_signatures(const LabeledPolytope& P) {
    if (P.dimension() != 2) {
        throw std::invalid_argument("exact_signatures: only 2-dimensional polytopes are supported");
    }
    std::vector<FacetSignature> out;
    for (std::size_t i = 0; i < P.facet_count(); ++i) {
        const Facet& f = P.facets()[i];
        std::vector<std::array<double, 2>> ends;
        for (const auto& v : P.vertices()) {
            const double l = affine_defining_functions(P, v)[i];
            if (std::abs(l) <= 1e-9 * (1.0 + std::abs(f.offset))) ends.push_back(v);
        }
        if (ends.size() != 2) {
            throw std::logic_error("exact_signatures: facet " + std::to_string(i) +
                                   " touches " + std::to_string(ends.size()) +
                                   " vertices instead of 2");
        }
        const double euclid = std::hypot(ends[1][0] - ends[0][0], ends[1][1] - ends[0][1]);
        const double nn = std::hypot(static_cast<double>(f.eta0[0]),
                                     static_cast<double>(f.eta0[1]));
        std::array<std::int64_t, 2> rep{f.eta0[0], f.eta0[1]};
        if (rep[0] < 0 || (rep[0] == 0 && rep[1] < 0)) {
            rep = {-rep[0], -rep[1]};
        }
        out.push_back({rep, f.label * euclid / nn, true});
    }
    return out;
}

Polygon polygon_of(const LabeledPolytope& P) {
    if (P.dimension() != 2) {
        throw std::invalid_argument("polygon_of: only 2-dimensional polytopes are supported");
    }
    Polygon poly;
    poly.vertices = P.vertices();
    return poly;
}

double vertex_distance(const Polygon& a, const Polygon& b) {
    if (a.vertices.size() != b.vertices.size() || a.vertices.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t m = a.vertices.size();
    const auto ca = a.centroid();
    const auto cb = b.centroid();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t shift = 0; shift < m; ++shift) {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& p = a.vertices[i];
            const auto& q = b.vertices[(i + shift) % m];
            const double d = std::hypot((p[0] - ca[0]) - (q[0] - cb[0]),
                                        (p[1] - ca[1]) - (q[1] - cb[1]));
            worst = std::max(worst, d);
        }
        best = std::min(best, worst);
    }
    return best;
}

}  // namespace evspec
