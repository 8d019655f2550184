/** \file grid_function.hpp
 *  \brief Uniformly sampled real functions of one variable plus the
 *         interpolation utilities shared by the inverse pipelines.
 */

#ifndef EVSPEC_GRID_FUNCTION_HPP
#define EVSPEC_GRID_FUNCTION_HPP

#include <cstddef>
#include <vector>

namespace evspec {

/// A real function sampled on the uniform grid x_j = x0 + j*dx, j = 0..m-1.
/// This is the currency of the Abel and Legendre pipelines.
struct GridFunction {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(double x0_, double dx_, std::vector<double> values_);

    std::size_t size() const { return values.size(); }
    double x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double x_back() const { return x(values.empty() ? 0 : values.size() - 1); }

    /// Piecewise-linear evaluation; clamps outside the grid.
    double interp_linear(double x) const;

    /// Trapezoid integral over the full grid.
    double trapezoid() const;
    /// Trapezoid integral over [x0, xhi] (xhi clamped to the grid, partial
    /// last cell handled linearly).
    double trapezoid_to(double xhi) const;
};

/// Shape-preserving monotone cubic interpolant (Fritsch-Carlson limiter).
/// Supports non-uniform abscissae; used for inverting monotone data.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    /// Solve f(x) = y by bisection; requires the data to be monotone
    /// increasing and y within range.
    double invert(double y) const;

private:
    std::vector<double> x_, y_, slope_;
};

/// Natural cubic spline on a uniform or non-uniform grid; used for
/// sampled-with-interpolation corrections where C^2 smoothness matters.
class CubicSpline {
public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

private:
    std::vector<double> x_, y_, m_;  // m_ = second derivatives at nodes
    std::size_t find_cell(double x) const;
};

}  // namespace evspec

#endif
