/** \file test_function.hpp
 *  \brief The smooth compactly supported bump family used to localize
 *         spectral measures and smeared phase-space integrals.
 */

#ifndef EVSPEC_TEST_FUNCTION_HPP
#define EVSPEC_TEST_FUNCTION_HPP

namespace evspec {

/// Bump supported on [a, b]:
///   rho(t) = exp(1 - 1/(1 - y^2)),  y = (2t - a - b)/(b - a),
/// and zero outside.  Smooth, 0 <= rho <= 1, rho((a+b)/2) = 1.
struct TestFunction {
    double a = 0.0;
    double b = 1.0;

    TestFunction(double a_, double b_);
    double operator()(double t) const;
    double support_lo() const { return a; }
    double support_hi() const { return b; }
};

}  // namespace evspec

#endif
