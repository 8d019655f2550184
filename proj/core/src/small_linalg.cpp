#include "evspec/small_linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evspec {

SymMat SymMat::zero(int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("SymMat: dimension must be 1 or 2");
    SymMat m;
    m.n = n;
    return m;
}

SymMat SymMat::identity(int n) {
    SymMat m = zero(n);
    m(0, 0) = 1.0;
    if (n == 2) m(1, 1) = 1.0;
    return m;
}

SymMat SymMat::from_entries(int n, double m00, double m01, double m11) {
    SymMat m = zero(n);
    m(0, 0) = m00;
    if (n == 2) {
        m(0, 1) = m01;
        m(1, 0) = m01;
        m(1, 1) = m11;
    }
    return m;
}

SymMat& SymMat::operator+=(const SymMat& rhs) {
    if (rhs.n != n) throw std::invalid_argument("SymMat: dimension mismatch in +=");
    for (std::size_t i = 0; i < 4; ++i) a[i] += rhs.a[i];
    return *this;
}

SymMat SymMat::operator+(const SymMat& rhs) const {
    SymMat m = *this;
    m += rhs;
    return m;
}

SymMat SymMat::operator*(double s) const {
    SymMat m = *this;
    for (std::size_t i = 0; i < 4; ++i) m.a[i] *= s;
    return m;
}

double SymMat::det() const { return n == 1 ? a[0] : a[0] * a[3] - a[1] * a[2]; }

double SymMat::trace() const { return n == 1 ? a[0] : a[0] + a[3]; }

SymMat SymMat::inverse() const {
    const double d = det();
    const double scale = n == 1 ? std::abs(a[0]) : std::abs(a[0]) + std::abs(a[1]) + std::abs(a[3]);
    if (std::abs(d) <= 1e-300 * (1.0 + scale * scale))
        throw std::domain_error("SymMat: matrix is numerically singular (det = " + std::to_string(d) + ")");
    SymMat m = zero(n);
    if (n == 1) {
        m(0, 0) = 1.0 / a[0];
    } else {
        m(0, 0) = a[3] / d;
        m(0, 1) = -a[1] / d;
        m(1, 0) = -a[2] / d;
        m(1, 1) = a[0] / d;
    }
    return m;
}

double SymMat::min_eigenvalue() const {
    if (n == 1) return a[0];
    const double mean = 0.5 * (a[0] + a[3]);
    const double diff = 0.5 * (a[0] - a[3]);
    const double r = std::sqrt(diff * diff + a[1] * a[1]);
    return mean - r;
}

int SymMat::signature() const {
    auto sign_of = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
    if (n == 1) return sign_of(a[0]);
    const double mean = 0.5 * (a[0] + a[3]);
    const double diff = 0.5 * (a[0] - a[3]);
    const double r = std::sqrt(diff * diff + a[1] * a[1]);
    return sign_of(mean - r) + sign_of(mean + r);
}

double SymMat::quad_form(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("SymMat: vector dimension mismatch");
    if (n == 1) return a[0] * v[0] * v[0];
    return a[0] * v[0] * v[0] + 2.0 * a[1] * v[0] * v[1] + a[3] * v[1] * v[1];
}

std::array<double, 2> SymMat::mul(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("SymMat: vector dimension mismatch");
    if (n == 1) return {a[0] * v[0], 0.0};
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
}

double SymMat::inverse_residual(const SymMat& inv) const {
    if (inv.n != n) throw std::invalid_argument("SymMat: dimension mismatch in inverse_residual");
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += (*this)(i, k) * inv(k, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double SymMat::asymmetry(int n, std::span<const double> rowmajor) {
    if (n == 1) return 0.0;
    if (rowmajor.size() != 4) throw std::invalid_argument("SymMat: expected 4 row-major entries for n=2");
    return std::abs(rowmajor[1] - rowmajor[2]);
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace evspec
