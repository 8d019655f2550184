#include "evspec/schrodinger_inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evspec/spectra.hpp"

namespace evspec {

namespace {

constexpr double kArgTol = 1e-10;   // golden-section argument tolerance
constexpr double kDamping = 0.8;    // coordinate-descent step damping
constexpr double kProperGap = 1.0;  // required growth center -> edge

/// Golden-section minimizer of a unimodal function on [lo, hi].
double golden_section(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > kArgTol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

void require_positive_alpha(std::span<const double> alpha, int n, const char* who) {
    if (static_cast<int>(alpha.size()) != n)
        throw std::invalid_argument(std::string(who) + ": weight dimension mismatch");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument(std::string(who) + ": weights must be positive");
}

}  // namespace

double forward_min(const AdmissiblePotential& V, std::span<const double> alpha) {
    if (V.n != 1 && V.n != 2) throw std::invalid_argument("forward_min: n must be 1 or 2");
    if (!V.value) throw std::invalid_argument("forward_min: potential has no value callable");
    require_positive_alpha(alpha, V.n, "forward_min");

    auto objective = [&](std::span<const double> s) {
        double acc = V.value(s);
        for (int i = 0; i < V.n; ++i)
            acc += alpha[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(i)] /
                   s[static_cast<std::size_t>(i)];
        return acc;
    };

    std::array<double, 2> s{};
    for (int i = 0; i < V.n; ++i)
        s[static_cast<std::size_t>(i)] = 0.5 * (V.box_lo[static_cast<std::size_t>(i)] +
                                                V.box_hi[static_cast<std::size_t>(i)]);
    // Coordinate descent: per-axis golden section, damped update.  For n = 1
    // a single undamped pass is exact.
    const int sweeps = V.n == 1 ? 1 : 200;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < V.n; ++i) {
            auto line = [&](double si) {
                std::array<double, 2> t = s;
                t[static_cast<std::size_t>(i)] = si;
                return objective(std::span<const double>(t.data(), static_cast<std::size_t>(V.n)));
            };
            const double best = golden_section(line, V.box_lo[static_cast<std::size_t>(i)],
                                               V.box_hi[static_cast<std::size_t>(i)]);
            const double step =
                (V.n == 1 ? 1.0 : kDamping) * (best - s[static_cast<std::size_t>(i)]);
            s[static_cast<std::size_t>(i)] += step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < kArgTol) break;
    }

    for (int i = 0; i < V.n; ++i) {
        const double width =
            V.box_hi[static_cast<std::size_t>(i)] - V.box_lo[static_cast<std::size_t>(i)];
        if (s[static_cast<std::size_t>(i)] > V.box_hi[static_cast<std::size_t>(i)] - 1e-5 * width ||
            s[static_cast<std::size_t>(i)] < V.box_lo[static_cast<std::size_t>(i)] + 1e-7 * width)
            throw std::runtime_error(
                "forward_min: minimizer pinned to the domain box edge on axis " + std::to_string(i) +
                " (potential not proper on the declared box, or box too small)");
    }
    return objective(std::span<const double>(s.data(), static_cast<std::size_t>(V.n)));
}

double spectral_min(const AdmissiblePotential& V, double alpha, double h, double truncation_R,
                    int grid_size) {
    if (V.n != 1)
        throw std::invalid_argument("spectral_min: only n = 1 radial spectra are supported");
    if (!V.value) throw std::invalid_argument("spectral_min: potential has no value callable");
    auto V1 = [&V](double s) {
        const double arg[1] = {s};
        return V.value(std::span<const double>(arg, 1));
    };
    const EquivariantSpectrum spec = radial_spectrum(V1, alpha, h, 1, truncation_R, grid_size);
    return spectral_bottom(spec);
}

MinFunction tabulate_min_function(const AdmissiblePotential& V, std::vector<double> alpha1,
                                  std::vector<double> alpha2) {
    MinFunction mf;
    mf.n = V.n;
    mf.alpha1 = std::move(alpha1);
    mf.alpha2 = std::move(alpha2);
    if (V.n == 1) {
        if (!mf.alpha2.empty())
            throw std::invalid_argument("tabulate_min_function: alpha2 given for n = 1");
        mf.m.reserve(mf.alpha1.size());
        for (double a : mf.alpha1) {
            const double arg[1] = {a};
            mf.m.push_back(forward_min(V, std::span<const double>(arg, 1)));
        }
    } else {
        if (mf.alpha2.empty())
            throw std::invalid_argument("tabulate_min_function: alpha2 required for n = 2");
        mf.m.reserve(mf.alpha1.size() * mf.alpha2.size());
        for (double a1 : mf.alpha1)
            for (double a2 : mf.alpha2) {
                const double arg[2] = {a1, a2};
                mf.m.push_back(forward_min(V, std::span<const double>(arg, 2)));
            }
    }
    validate_min_function(mf);
    return mf;
}

namespace {

void validate_axis_grid(const std::vector<double>& g, const char* name) {
    if (g.size() < 3)
        throw std::invalid_argument(std::string("MinFunction: grid ") + name +
                                    " needs at least three points");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!(g[i] > 0.0))
            throw std::invalid_argument(std::string("MinFunction: grid ") + name +
                                        " must be positive");
        if (i > 0 && !(g[i] > g[i - 1]))
            throw std::invalid_argument(std::string("MinFunction: grid ") + name +
                                        " must be strictly increasing");
    }
}

/// Checks monotonicity of m and concavity of G(a) = m(sqrt(a)) along one
/// axis-aligned line of the tensor grid.
void validate_line(const std::vector<double>& alpha, const std::function<double(std::size_t)>& m_at,
                   const char* axis) {
    for (std::size_t i = 0; i + 1 < alpha.size(); ++i)
        if (m_at(i + 1) < m_at(i) - 1e-10 * (1.0 + std::abs(m_at(i))))
            throw std::invalid_argument(std::string("MinFunction: m decreases along ") + axis +
                                        " at index " + std::to_string(i + 1));
    for (std::size_t i = 1; i + 1 < alpha.size(); ++i) {
        const double a0 = alpha[i - 1] * alpha[i - 1];
        const double a1 = alpha[i] * alpha[i];
        const double a2 = alpha[i + 1] * alpha[i + 1];
        // Second divided difference of G; concavity demands <= 0 (+ tolerance).
        const double dd = 2.0 * ((m_at(i + 1) - m_at(i)) / (a2 - a1) - (m_at(i) - m_at(i - 1)) / (a1 - a0)) /
                          (a2 - a0);
        if (dd > 1e-8)
            throw std::invalid_argument(std::string("MinFunction: G(a) fails concavity along ") +
                                        axis + " at index " + std::to_string(i) +
                                        " (second difference " + std::to_string(dd) + ")");
    }
}

}  // namespace

void validate_min_function(const MinFunction& mf) {
    if (mf.n != 1 && mf.n != 2) throw std::invalid_argument("MinFunction: n must be 1 or 2");
    validate_axis_grid(mf.alpha1, "alpha1");
    if (mf.n == 1) {
        if (mf.m.size() != mf.alpha1.size())
            throw std::invalid_argument("MinFunction: value count does not match grid");
        validate_line(mf.alpha1, [&](std::size_t i) { return mf.m[i]; }, "alpha1");
        return;
    }
    validate_axis_grid(mf.alpha2, "alpha2");
    if (mf.m.size() != mf.alpha1.size() * mf.alpha2.size())
        throw std::invalid_argument("MinFunction: value count does not match tensor grid");
    const std::size_t n2 = mf.alpha2.size();
    for (std::size_t j = 0; j < n2; ++j)
        validate_line(mf.alpha1, [&](std::size_t i) { return mf.m[i * n2 + j]; }, "alpha1");
    for (std::size_t i = 0; i < mf.alpha1.size(); ++i)
        validate_line(mf.alpha2, [&](std::size_t j) { return mf.m[i * n2 + j]; }, "alpha2");
}

namespace {

/// Improvement of the sup from a parabola through three (a, phi) samples
/// around the discrete argmax; zero when the fit is not concave or the vertex
/// leaves the bracket.
double parabola_lift(double am, double a0, double ap, double fm, double f0, double fp) {
    const double d1 = (f0 - fm) / (a0 - am);
    const double d2 = (fp - f0) / (ap - a0);
    const double curv = (d2 - d1) / (ap - am);  // half the second derivative
    if (!(curv < 0.0)) return 0.0;
    const double vertex = 0.5 * (am + a0 - d1 / (2.0 * curv));
    if (vertex < am || vertex > ap) return 0.0;
    // Value of the fit at the vertex, relative to f0.
    const double lift = fm + d1 * (vertex - am) + curv * (vertex - am) * (vertex - a0) - f0;
    return std::max(lift, 0.0);
}

}  // namespace

RecoveredPotential recover_potential(const MinFunction& mf, std::vector<double> s1,
                                     std::vector<double> s2) {
    validate_min_function(mf);
    if ((mf.n == 1) != s2.empty())
        throw std::invalid_argument("recover_potential: s-grid arity does not match MinFunction");
    for (double s : s1)
        if (!(s > 0.0)) throw std::invalid_argument("recover_potential: s grid must be positive");
    for (double s : s2)
        if (!(s > 0.0)) throw std::invalid_argument("recover_potential: s grid must be positive");

    // Precompute a-grids.
    std::vector<double> a1(mf.alpha1.size()), a2(mf.alpha2.size());
    for (std::size_t i = 0; i < a1.size(); ++i) a1[i] = mf.alpha1[i] * mf.alpha1[i];
    for (std::size_t j = 0; j < a2.size(); ++j) a2[j] = mf.alpha2[j] * mf.alpha2[j];

    RecoveredPotential out;
    out.n = mf.n;
    out.s1 = std::move(s1);
    out.s2 = std::move(s2);

    const std::size_t n2 = std::max<std::size_t>(1, a2.size());
    auto G = [&](std::size_t i, std::size_t j) { return mf.m[i * n2 + j]; };

    auto solve_one = [&](double sv1, double sv2) {
        double best = -1e300;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < a1.size(); ++i) {
            const double penalty1 = a1[i] / sv1;
            for (std::size_t j = 0; j < n2; ++j) {
                const double phi =
                    G(i, j) - penalty1 - (mf.n == 2 ? a2[j] / sv2 : 0.0);
                if (phi > best) {
                    best = phi;
                    bi = i;
                    bj = j;
                }
            }
        }
        const bool on_edge = bi == 0 || bi + 1 == a1.size() ||
                             (mf.n == 2 && (bj == 0 || bj + 1 == n2));
        if (on_edge)
            throw std::runtime_error(
                "recover_potential: sup attained on the a-grid boundary for s = (" +
                std::to_string(sv1) + (mf.n == 2 ? ", " + std::to_string(sv2) : std::string()) +
                "); extend the weight grid");
        // Per-axis parabola refinement around the discrete argmax.
        auto phi_at = [&](std::size_t i, std::size_t j) {
            return G(i, j) - a1[i] / sv1 - (mf.n == 2 ? a2[j] / sv2 : 0.0);
        };
        double value = best;
        value += parabola_lift(a1[bi - 1], a1[bi], a1[bi + 1], phi_at(bi - 1, bj), best,
                               phi_at(bi + 1, bj));
        if (mf.n == 2)
            value += parabola_lift(a2[bj - 1], a2[bj], a2[bj + 1], phi_at(bi, bj - 1), best,
                                   phi_at(bi, bj + 1));
        out.V.push_back(value);
        out.argmax.push_back(bi * n2 + bj);
    };

    if (mf.n == 1) {
        for (double sv : out.s1) solve_one(sv, 1.0);
    } else {
        for (double sv1 : out.s1)
            for (double sv2 : out.s2) solve_one(sv1, sv2);
    }
    return out;
}

AdmissibilityReport check_admissible(const AdmissiblePotential& V, int grid) {
    if (V.n != 1 && V.n != 2) throw std::invalid_argument("check_admissible: n must be 1 or 2");
    if (!V.value) throw std::invalid_argument("check_admissible: potential has no value callable");
    if (grid < 4) throw std::invalid_argument("check_admissible: grid too small");

    AdmissibilityReport rep;
    const int n = V.n;
    auto eval = [&](const std::array<double, 2>& s) {
        return V.value(std::span<const double>(s.data(), static_cast<std::size_t>(n)));
    };

    std::array<double, 2> width{};
    for (int i = 0; i < n; ++i)
        width[static_cast<std::size_t>(i)] =
            V.box_hi[static_cast<std::size_t>(i)] - V.box_lo[static_cast<std::size_t>(i)];
    // Keep FD stencils inside the box.
    std::array<double, 2> step{};
    for (int i = 0; i < n; ++i) step[static_cast<std::size_t>(i)] = width[static_cast<std::size_t>(i)] / (4.0 * grid);

    auto record = [&](bool& flag, std::vector<double>& witness, const std::array<double, 2>& s) {
        if (flag) {
            flag = false;
            witness.assign(s.begin(), s.begin() + n);
        }
    };

    const int jmax = n == 2 ? grid : 0;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= jmax; ++j) {
            std::array<double, 2> s{};
            const double f1 = (i + 0.5) / (grid + 1.0);
            const double f2 = (j + 0.5) / (grid + 1.0);
            s[0] = V.box_lo[0] + f1 * width[0];
            if (n == 2) s[1] = V.box_lo[1] + f2 * width[1];

            // Monotonicity: centered first differences must be positive.
            SymMat hess = SymMat::zero(n);
            for (int axis = 0; axis < n; ++axis) {
                std::array<double, 2> sp = s, sm = s;
                sp[static_cast<std::size_t>(axis)] += step[static_cast<std::size_t>(axis)];
                sm[static_cast<std::size_t>(axis)] -= step[static_cast<std::size_t>(axis)];
                const double deriv =
                    (eval(sp) - eval(sm)) / (2.0 * step[static_cast<std::size_t>(axis)]);
                if (!(deriv > 0.0)) record(rep.monotone, rep.monotone_witness, s);
                hess(axis, axis) = (eval(sp) - 2.0 * eval(s) + eval(sm)) /
                                   (step[static_cast<std::size_t>(axis)] *
                                    step[static_cast<std::size_t>(axis)]);
            }
            if (n == 2) {
                std::array<double, 2> spp = s, spm = s, smp = s, smm = s;
                spp[0] += step[0]; spp[1] += step[1];
                spm[0] += step[0]; spm[1] -= step[1];
                smp[0] -= step[0]; smp[1] += step[1];
                smm[0] -= step[0]; smm[1] -= step[1];
                const double mixed =
                    (eval(spp) - eval(spm) - eval(smp) + eval(smm)) / (4.0 * step[0] * step[1]);
                hess(0, 1) = hess(1, 0) = mixed;
            }
            // Convexity: FD Hessian positive semidefinite (small tolerance).
            const double scale = std::max(1.0, std::abs(hess.trace()));
            if (hess.min_eigenvalue() < -1e-6 * scale) record(rep.convex, rep.convex_witness, s);
        }
    }

    // Properness proxy: growth of at least kProperGap from center to each
    // upper edge midpoint.
    std::array<double, 2> center{};
    for (int i = 0; i < n; ++i)
        center[static_cast<std::size_t>(i)] =
            0.5 * (V.box_lo[static_cast<std::size_t>(i)] + V.box_hi[static_cast<std::size_t>(i)]);
    const double v_center = eval(center);
    for (int axis = 0; axis < n; ++axis) {
        std::array<double, 2> edge = center;
        edge[static_cast<std::size_t>(axis)] = V.box_hi[static_cast<std::size_t>(axis)];
        if (!(eval(edge) > v_center + kProperGap)) record(rep.proper, rep.proper_witness, edge);
    }
    return rep;
}

}  // namespace evspec
