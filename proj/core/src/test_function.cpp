#include "evspec/test_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evspec {

TestFunction::TestFunction(double a_, double b_) : a(a_), b(b_) {
    if (!(b > a))
        throw std::invalid_argument("TestFunction: need a < b, got [" + std::to_string(a_) + ", " +
                                    std::to_string(b_) + "]");
}

double TestFunction::operator()(double t) const {
    const double y = (2.0 * t - a - b) / (b - a);
    if (std::abs(y) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - y * y));
}

}  // namespace evspec
