#include "evspec/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace evspec {

std::size_t Tridiagonal::count_below(double x) const {
    const std::size_t n = size();
    if (n == 0) return 0;
    if (e.size() + 1 != n) throw std::invalid_argument("Tridiagonal: off-diagonal size must be n-1");
    // LDL^T pivots of (T - x I); the number of negative pivots equals the
    // number of eigenvalues below x (Sylvester's law of inertia).
    std::size_t count = 0;
    double piv = d[0] - x;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    if (piv == 0.0) piv = -tiny;
    if (piv < 0.0) ++count;
    for (std::size_t j = 1; j < n; ++j) {
        piv = (d[j] - x) - e[j - 1] * e[j - 1] / piv;
        if (std::abs(piv) < tiny) piv = piv < 0.0 ? -tiny : tiny;
        if (piv < 0.0) ++count;
    }
    return count;
}

void Tridiagonal::gershgorin(double& lo, double& hi) const {
    const std::size_t n = size();
    lo = std::numeric_limits<double>::infinity();
    hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        if (j > 0) r += std::abs(e[j - 1]);
        if (j + 1 < n) r += std::abs(e[j]);
        lo = std::min(lo, d[j] - r);
        hi = std::max(hi, d[j] + r);
    }
}

namespace {

/// Bisect for the eigenvalue with index `idx` (0-based, ascending) inside
/// [lo, hi], using the Sturm count as the oracle.
double bisect_index(const Tridiagonal& T, std::size_t idx, double lo, double hi, double atol) {
    for (int iter = 0; iter < 200 && hi - lo > atol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (T.count_below(mid) > idx)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> Tridiagonal::lowest_eigenvalues(std::size_t k, double tol) const {
    const std::size_t n = size();
    if (k > n) throw std::invalid_argument("Tridiagonal: requested more eigenvalues than matrix order");
    double lo, hi;
    gershgorin(lo, hi);
    const double atol = tol * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    std::vector<double> ev;
    ev.reserve(k);
    double left = lo;
    for (std::size_t idx = 0; idx < k; ++idx) {
        const double lambda = bisect_index(*this, idx, left, hi, atol);
        ev.push_back(lambda);
        // Eigenvalues are ascending; the next one cannot lie below this one.
        left = lambda - atol;
    }
    return ev;
}

std::vector<double> Tridiagonal::eigenvalues_below(double cap, double tol) const {
    double lo, hi;
    gershgorin(lo, hi);
    if (cap <= lo) return {};
    const std::size_t k = count_below(std::min(cap, hi) + tol);
    std::vector<double> ev = lowest_eigenvalues(k, tol);
    while (!ev.empty() && ev.back() > cap) ev.pop_back();
    return ev;
}

std::vector<double> Tridiagonal::eigenvector(double lambda) const {
    const std::size_t n = size();
    if (n == 0) return {};
    // Inverse iteration with a partial-pivoting tridiagonal LU of (T - lambda I).
    // A tiny shift keeps the factorization nonsingular at a converged lambda.
    double lo, hi;
    gershgorin(lo, hi);
    const double shift = lambda + 1e-12 * std::max(1.0, std::abs(hi - lo));

    // Band LU with row swaps; fill-in is limited to a second superdiagonal.
    std::vector<double> dd(n, 0.0), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
    std::vector<int> swapped(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        dd[j] = d[j] - shift;
        if (j + 1 < n) {
            du[j] = e[j];
            dl[j] = e[j];
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (std::abs(dd[j]) >= std::abs(dl[j])) {
            const double fact = dd[j] != 0.0 ? dl[j] / dd[j] : 0.0;
            dl[j] = fact;
            dd[j + 1] -= fact * du[j];
        } else {
            const double fact = dd[j] / dl[j];
            dd[j] = dl[j];
            dl[j] = fact;
            const double tmp = du[j];
            du[j] = dd[j + 1];
            dd[j + 1] = tmp - fact * dd[j + 1];
            if (j + 2 < n) {
                du2[j] = du[j + 1];
                du[j + 1] = -fact * du[j + 1];
            }
            swapped[j] = 1;
        }
    }
    if (std::abs(dd[n - 1]) < std::numeric_limits<double>::min())
        dd[n - 1] = std::numeric_limits<double>::min();

    auto solve = [&](std::vector<double>& b) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (swapped[j]) {
                const double tmp = b[j];
                b[j] = b[j + 1];
                b[j + 1] = tmp - dl[j] * b[j];
            } else {
                b[j + 1] -= dl[j] * b[j];
            }
        }
        b[n - 1] /= dd[n - 1];
        if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 3; i >= 0; --i) {
            const std::size_t j = static_cast<std::size_t>(i);
            b[j] = (b[j] - du[j] * b[j + 1] - du2[j] * b[j + 2]) / dd[j];
        }
    };

    std::vector<double> v(n, 1.0);
    for (int iter = 0; iter < 4; ++iter) {
        solve(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("Tridiagonal: inverse iteration broke down");
        for (double& x : v) x /= norm;
    }
    return v;
}

}  // namespace evspec
