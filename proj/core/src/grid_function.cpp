#include "evspec/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evspec {

GridFunction::GridFunction(double x0_, double dx_, std::vector<double> values_)
    : x0(x0_), dx(dx_), values(std::move(values_)) {
    if (dx <= 0.0) throw std::invalid_argument("GridFunction: grid spacing must be positive");
    if (values.empty()) throw std::invalid_argument("GridFunction: empty sample vector");
}

double GridFunction::interp_linear(double xq) const {
    if (values.size() == 1) return values[0];
    const double s = (xq - x0) / dx;
    if (s <= 0.0) return values.front();
    const double smax = static_cast<double>(values.size() - 1);
    if (s >= smax) return values.back();
    const std::size_t j = static_cast<std::size_t>(s);
    const double w = s - static_cast<double>(j);
    return (1.0 - w) * values[j] + w * values[j + 1];
}

double GridFunction::trapezoid() const {
    if (values.size() < 2) return 0.0;
    double s = 0.5 * (values.front() + values.back());
    for (std::size_t j = 1; j + 1 < values.size(); ++j) s += values[j];
    return s * dx;
}

double GridFunction::trapezoid_to(double xhi) const {
    if (values.size() < 2 || xhi <= x0) return 0.0;
    const double smax = static_cast<double>(values.size() - 1);
    double s = std::min((xhi - x0) / dx, smax);
    const std::size_t full = static_cast<std::size_t>(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < full; ++j) acc += 0.5 * (values[j] + values[j + 1]) * dx;
    const double frac = s - static_cast<double>(full);
    if (frac > 0.0 && full + 1 < values.size()) {
        const double vmid = values[full] + frac * (values[full + 1] - values[full]);
        acc += 0.5 * (values[full] + vmid) * frac * dx;
    }
    return acc;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw std::invalid_argument("MonotoneCubic: need at least two matching samples");
    for (std::size_t j = 1; j < x_.size(); ++j)
        if (x_[j] <= x_[j - 1]) throw std::invalid_argument("MonotoneCubic: abscissae must increase");

    const std::size_t n = x_.size();
    std::vector<double> d(n - 1);  // secant slopes
    for (std::size_t j = 0; j + 1 < n; ++j) d[j] = (y_[j + 1] - y_[j]) / (x_[j + 1] - x_[j]);

    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (d[j - 1] * d[j] <= 0.0)
            slope_[j] = 0.0;
        else
            slope_[j] = 0.5 * (d[j - 1] + d[j]);
    }
    // Fritsch-Carlson limiting: keep |alpha|, |beta| <= 3.
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (d[j] == 0.0) {
            slope_[j] = 0.0;
            slope_[j + 1] = 0.0;
            continue;
        }
        const double alpha = slope_[j] / d[j];
        const double beta = slope_[j + 1] / d[j];
        const double r = alpha * alpha + beta * beta;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            slope_[j] = tau * alpha * d[j];
            slope_[j + 1] = tau * beta * d[j];
        }
    }
}

double MonotoneCubic::operator()(double xq) const {
    if (xq <= x_.front()) return y_.front() + slope_.front() * (xq - x_.front());
    if (xq >= x_.back()) return y_.back() + slope_.back() * (xq - x_.back());
    const std::size_t j = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin() - 1);
    const double h = x_[j + 1] - x_[j];
    const double t = (xq - x_[j]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[j] + h10 * h * slope_[j] + h01 * y_[j + 1] + h11 * h * slope_[j + 1];
}

double MonotoneCubic::invert(double yq) const {
    for (std::size_t j = 1; j < y_.size(); ++j)
        if (y_[j] < y_[j - 1])
            throw std::domain_error("MonotoneCubic: data is not monotone increasing, cannot invert");
    if (yq <= y_.front()) return x_.front();
    if (yq >= y_.back()) return x_.back();
    double lo = x_.front(), hi = x_.back();
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if ((*this)(mid) < yq)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 3) throw std::invalid_argument("CubicSpline: need at least three samples");
    for (std::size_t j = 1; j < n; ++j)
        if (x_[j] <= x_[j - 1]) throw std::invalid_argument("CubicSpline: abscissae must increase");

    // Natural spline: solve the tridiagonal system for second derivatives.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = 1.0;
    b[n - 1] = 1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double hl = x_[j] - x_[j - 1];
        const double hr = x_[j + 1] - x_[j];
        a[j] = hl / 6.0;
        b[j] = (hl + hr) / 3.0;
        c[j] = hr / 6.0;
        r[j] = (y_[j + 1] - y_[j]) / hr - (y_[j] - y_[j - 1]) / hl;
    }
    // Thomas algorithm.
    m_.assign(n, 0.0);
    std::vector<double> cp(n, 0.0), rp(n, 0.0);
    cp[0] = c[0] / b[0];
    rp[0] = r[0] / b[0];
    for (std::size_t j = 1; j < n; ++j) {
        const double denom = b[j] - a[j] * cp[j - 1];
        cp[j] = c[j] / denom;
        rp[j] = (r[j] - a[j] * rp[j - 1]) / denom;
    }
    m_[n - 1] = rp[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) m_[j] = rp[j] - cp[j] * m_[j + 1];
}

std::size_t CubicSpline::find_cell(double xq) const {
    if (xq <= x_.front()) return 0;
    if (xq >= x_.back()) return x_.size() - 2;
    return static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin() - 1);
}

double CubicSpline::value(double xq) const {
    const std::size_t j = find_cell(xq);
    const double h = x_[j + 1] - x_[j];
    const double A = (x_[j + 1] - xq) / h;
    const double B = (xq - x_[j]) / h;
    return A * y_[j] + B * y_[j + 1] +
           ((A * A * A - A) * m_[j] + (B * B * B - B) * m_[j + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double xq) const {
    const std::size_t j = find_cell(xq);
    const double h = x_[j + 1] - x_[j];
    const double A = (x_[j + 1] - xq) / h;
    const double B = (xq - x_[j]) / h;
    return (y_[j + 1] - y_[j]) / h +
           ((3 * B * B - 1) * m_[j + 1] - (3 * A * A - 1) * m_[j]) * h / 6.0;
}

double CubicSpline::second_derivative(double xq) const {
    const std::size_t j = find_cell(xq);
    const double h = x_[j + 1] - x_[j];
    const double A = (x_[j + 1] - xq) / h;
    const double B = (xq - x_[j]) / h;
    return A * m_[j] + B * m_[j + 1];
}

}  // namespace evspec
