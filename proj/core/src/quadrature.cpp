#include "evspec/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace evspec {

namespace {

GaussLegendre compute_gauss_legendre(int order) {
    if (order < 1 || order > 64) throw std::invalid_argument("GaussLegendre: order must be in [1, 64]");
    GaussLegendre rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P_order(x).
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

double pairwise_sum(std::vector<double>&& values) {
    if (values.empty()) return 0.0;
    std::size_t n = values.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) values[i] = values[2 * i] + values[2 * i + 1];
        if (n % 2 == 1) {
            values[half] = values[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return values[0];
}

double integrate_composite(const std::function<double(double)>& f, double a, double b,
                           int panels, int order) {
    if (panels < 1) throw std::invalid_argument("integrate_composite: panels must be positive");
    const GaussLegendre& rule = GaussLegendre::get(order);
    const double h = (b - a) / panels;
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        const double half = 0.5 * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            partial.push_back(half * rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
    return pairwise_sum(std::move(partial));
}

double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                int panels, int order) {
    if (b <= a) return 0.0;
    const double mid = 0.5 * (a + b);
    // Left half: x = a + tau^2, dx = 2 tau dtau, tau in [0, sqrt(mid - a)].
    const double tl = std::sqrt(mid - a);
    auto left = [&](double tau) { return 2.0 * tau * f(a + tau * tau); };
    // Right half: x = b - tau^2.
    const double tr = std::sqrt(b - mid);
    auto right = [&](double tau) { return 2.0 * tau * f(b - tau * tau); };
    const int half_panels = std::max(1, panels / 2);
    return integrate_composite(left, 0.0, tl, half_panels, order) +
           integrate_composite(right, 0.0, tr, half_panels, order);
}

std::vector<double> graded_edges(double length, double w0, double factor) {
    if (length <= 0.0) throw std::invalid_argument("graded_edges: length must be positive");
    if (w0 <= 0.0 || factor <= 1.0) throw std::invalid_argument("graded_edges: need w0 > 0 and factor > 1");
    std::vector<double> edges{0.0};
    double w = std::min(w0, length);
    while (edges.back() < length) {
        edges.push_back(std::min(edges.back() + w, length));
        w *= factor;
    }
    return edges;
}

std::vector<double> graded_edges_both(double w0, double factor) {
    // Grade [0, 1/2] toward 0 and mirror onto [1/2, 1].
    std::vector<double> half = graded_edges(0.5, w0, factor);
    std::vector<double> edges = half;
    for (std::size_t i = half.size() - 1; i-- > 0;) edges.push_back(1.0 - half[i]);
    return edges;
}

}  // namespace evspec
