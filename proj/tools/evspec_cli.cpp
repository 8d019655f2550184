/** \file evspec_cli.cpp
 *  \brief The `evspec` command-line driver: every library pipeline behind one
 *         reproducible binary.
 *
 *  Each subcommand resolves its parameters (command line over config file
 *  over defaults), runs one pipeline, writes CSV outputs plus a manifest.json
 *  into --out, and prints a short report.  Identical parameters and seed give
 *  byte-identical CSV files; wall-clock timings live only in the manifest.
 *
 *  Exit codes:
 *    0  success
 *    1  a computation failed (solver, quadrature, or reconstruction threw)
 *    2  usage or configuration error
 *    3  unknown fixture name
 *    4  invalid h (not the reciprocal of a positive integer, or alpha/h not
 *       an integer)
 *    5  missing or unreadable input file
 */

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "evspec/io.hpp"
#include "evspec/polygon_recon.hpp"
#include "evspec/polytope.hpp"
#include "evspec/reduced_symbol.hpp"
#include "evspec/s2_inverse.hpp"
#include "evspec/schrodinger_inverse.hpp"
#include "evspec/spectra.hpp"
#include "evspec/stationary_phase.hpp"
#include "evspec/wps.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

/// Tolerance of the tridiagonal bisection eigensolver, recorded as spectrum
/// metadata.
constexpr double kEigenTol = 1e-14;

enum ExitCode : int {
    kOk = 0,
    kRuntime = 1,
    kUsage = 2,
    kFixture = 3,
    kBadH = 4,
    kMissingFile = 5,
};

// Failure classes carrying their documented exit codes (see file header).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// open_input with the failure mapped to the missing-file exit code.
std::ifstream open_existing(const std::string& path) {
    try {
        return evspec::open_input(path);
    } catch (const std::runtime_error& e) {
        throw InputFileError(e.what());
    }
}

/// Parse h given as "1/Q" (integer Q >= 1) or as a positive decimal whose
/// reciprocal is integral to 1e-9 relative.
double parse_h(const std::string& text) {
    const auto fail = [&](const std::string& why) -> double {
        throw HFormatError("invalid h '" + text + "': " + why +
                           " (h must be the reciprocal of a positive integer, e.g. 1/100 or 0.01)");
    };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long num = 0;
        long long den = 0;
        std::size_t used = 0;
        try {
            num = std::stoll(text.substr(0, slash), &used);
            if (used != slash) return fail("malformed numerator");
            const std::string tail = text.substr(slash + 1);
            den = std::stoll(tail, &used);
            if (used != tail.size()) return fail("malformed denominator");
        } catch (const HFormatError&) {
            throw;
        } catch (const std::exception&) {
            return fail("not a ratio of integers");
        }
        if (num != 1) return fail("numerator must be 1");
        if (den < 1) return fail("denominator must be a positive integer");
        return 1.0 / static_cast<double>(den);
    }
    double value = 0.0;
    std::size_t used = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        return fail("not a number");
    }
    if (used != text.size()) return fail("trailing characters");
    if (!(value > 0.0)) return fail("must be positive");
    const double recip = 1.0 / value;
    if (std::abs(recip - std::round(recip)) > 1e-9 * std::max(1.0, recip)) {
        return fail("1/h is not an integer");
    }
    return value;
}

/// Comma-separated list of h values, each in parse_h format.
std::vector<double> parse_h_list(const std::string& text) {
    std::vector<double> hs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) hs.push_back(parse_h(item));
    }
    if (hs.empty()) throw HFormatError("invalid h list '" + text + "': no values");
    return hs;
}

/// Comma-separated list of plain doubles (for parameters that are not
/// required to be reciprocals of integers).
std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + item + "' is not a number");
        }
        if (used != item.size()) throw UsageError(flag + ": '" + item + "' is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw UsageError(flag + ": empty list");
    return values;
}

/// semiclassical_weight with its validation failures mapped to the invalid-h
/// exit code (alpha/h integrality is the same discretization contract as h).
int weight_or_fail(double alpha, double h) {
    try {
        return evspec::semiclassical_weight(alpha, h);
    } catch (const std::invalid_argument& e) {
        throw HFormatError(e.what());
    }
}

[[noreturn]] void unknown_fixture(const std::string& name, const std::string& known) {
    throw FixtureError("unknown fixture '" + name + "' (known: " + known + ")");
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

bool is_sphere_fixture(const std::string& name) {
    return name == "round-sphere" || name == "quartic-sphere";
}
bool is_radial_fixture(const std::string& name) {
    return name == "oscillator" || name == "anharmonic";
}

/// S^2 profile fixtures: the round metric and the quartic perturbation
/// g'' = 1/(1-x^2) + x^2 (even, convex, pole limits intact).
evspec::S2MetricProfile profile_fixture(const std::string& name) {
    if (name == "round-sphere") return evspec::S2MetricProfile::round();
    if (name == "quartic-sphere") {
        return evspec::S2MetricProfile([](double x) { return 1.0 / (1.0 - x * x) + x * x; });
    }
    unknown_fixture(name, "round-sphere, quartic-sphere");
}

/// The same sphere fixtures as symplectic potentials on the interval, for
/// symbol-side computations: canonical potential, plus the x^4/12 correction
/// whose Hessian is the x^2 bump of the quartic profile.
evspec::SymplecticPotential sphere_potential_fixture(const std::string& name) {
    using namespace evspec;
    if (name == "round-sphere") {
        return SymplecticPotential::canonical(LabeledPolytope::interval());
    }
    if (name == "quartic-sphere") {
        C2Function c;
        c.value = [](std::span<const double> x) { return x[0] * x[0] * x[0] * x[0] / 12.0; };
        c.gradient = [](std::span<const double> x) {
            return std::vector<double>{x[0] * x[0] * x[0] / 3.0};
        };
        c.hessian = [](std::span<const double> x) { return SymMat::from_entries(1, x[0] * x[0]); };
        return SymplecticPotential(LabeledPolytope::interval(), std::move(c));
    }
    unknown_fixture(name, "round-sphere, quartic-sphere");
}

/// Ground-truth profile value g''(x) of a sphere fixture.
std::function<double(double)> sphere_truth_gdd(const std::string& name) {
    if (name == "round-sphere") return [](double x) { return 1.0 / (1.0 - x * x); };
    if (name == "quartic-sphere") {
        return [](double x) { return 1.0 / (1.0 - x * x) + x * x; };
    }
    unknown_fixture(name, "round-sphere, quartic-sphere");
}

/// Radial potentials as scalar functions of s = r^2.
std::function<double(double)> radial_scalar(const std::string& name) {
    if (name == "oscillator") return [](double s) { return s; };
    if (name == "anharmonic") return [](double s) { return s + s * s; };
    unknown_fixture(name, "oscillator, anharmonic");
}

/// The same radial fixtures as orthant potentials (for symbol and duality
/// computations).
evspec::AdmissiblePotential radial_fixture(const std::string& name) {
    const auto f = radial_scalar(name);
    evspec::AdmissiblePotential V;
    V.n = 1;
    V.value = [f](std::span<const double> s) { return f(s[0]); };
    return V;
}

/// Polygon fixtures: the unit simplex, a 1 x 2 rectangle (the designed
/// rejection case: opposite facets are indistinguishable under the sign
/// ambiguity), and a quadrilateral with no two normals parallel.
evspec::LabeledPolytope polytope_fixture(const std::string& name) {
    using evspec::Facet;
    if (name == "simplex") return evspec::LabeledPolytope::unit_simplex();
    if (name == "rectangle") return evspec::LabeledPolytope::rectangle(1.0, 2.0);
    if (name == "quad") {
        std::vector<Facet> facets;
        facets.push_back({{1, 0}, 1, 0.0});
        facets.push_back({{0, 1}, 1, 0.0});
        facets.push_back({{-1, -2}, 1, -3.0});
        facets.push_back({{-2, -1}, 1, -3.0});
        return evspec::LabeledPolytope(2, std::move(facets));
    }
    unknown_fixture(name, "simplex, rectangle, quad");
}

// ---------------------------------------------------------------------------
// Run context: output directory, seed stamping, manifest
// ---------------------------------------------------------------------------

/// Output sink shared by every subcommand.  Collects resolved inputs and
/// results for manifest.json and stamps each CSV with the run seed (except
/// writers that record a seed of their own).
class RunContext {
public:
    RunContext(std::string out_dir, std::uint64_t seed)
        : out_(std::move(out_dir)), seed_(seed), start_(std::chrono::steady_clock::now()) {
        std::error_code ec;
        std::filesystem::create_directories(out_, ec);
        if (ec) {
            throw std::runtime_error("cannot create output directory '" + out_ +
                                     "': " + ec.message());
        }
    }

    std::uint64_t seed() const { return seed_; }
    json& inputs() { return manifest_["inputs"]; }
    json& results() { return manifest_["results"]; }

    void save_csv(const std::string& name, const std::function<void(std::ostream&)>& writer,
                  bool stamp_seed = true) {
        const std::string path = (std::filesystem::path(out_) / name).string();
        evspec::write_file(path, [&](std::ostream& os) {
            if (stamp_seed) os << "# seed = " << seed_ << "\n";
            writer(os);
        });
        files_.push_back(name);
    }

    /// Write manifest.json; the final act of every handler.
    void finish(const std::string& subcommand) {
        manifest_["subcommand"] = subcommand;
        manifest_["seed"] = seed_;
        manifest_["versions"] = {{"evspec", kVersion}};
        manifest_["files"] = files_;
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        manifest_["timings"] = {{"total_seconds", seconds}};
        evspec::write_file((std::filesystem::path(out_) / "manifest.json").string(),
                           [&](std::ostream& os) { os << manifest_.dump(2) << "\n"; });
    }

private:
    std::string out_;
    std::uint64_t seed_ = 0;
    std::chrono::steady_clock::time_point start_;
    json manifest_;
    std::vector<std::string> files_;
};

// ---------------------------------------------------------------------------
// Small numerics shared by handlers
// ---------------------------------------------------------------------------

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2) throw UsageError("grid needs at least 2 points");
    std::vector<double> x(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        x[static_cast<std::size_t>(j)] =
            lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
    }
    return x;
}

/// Least-squares slope of log y against log x (the asymptotic order).
double loglog_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double lx = std::log(x[j]);
        const double ly = std::log(y[j]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dm = static_cast<double>(m);
    return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

/// Eigenvalue count that safely covers [0, E]: the Weyl estimate
/// vol/(2 pi h) padded by 30% plus a constant.
int coverage_count(const evspec::ReducedSymbol& sym, double E, double h) {
    evspec::QuadratureSpec cheap;
    cheap.resolution = 2000;
    const double vol = evspec::sublevel_volume(sym, E, cheap);
    return static_cast<int>(std::ceil(1.3 * vol / (2.0 * std::numbers::pi * h))) + 10;
}

/// Spectrum of a named fixture at (alpha, h), dispatching sphere fixtures to
/// the S^2 solver and radial ones to the Schrödinger solver.
evspec::EquivariantSpectrum fixture_spectrum(const std::string& fixture, double alpha, double h,
                                             int count, int grid, double truncation_R) {
    if (is_sphere_fixture(fixture)) {
        return evspec::s2_spectrum(profile_fixture(fixture), alpha, h, count, grid);
    }
    if (is_radial_fixture(fixture)) {
        return evspec::radial_spectrum(radial_scalar(fixture), alpha, h, count, truncation_R, grid);
    }
    unknown_fixture(fixture, "round-sphere, quartic-sphere, oscillator, anharmonic");
}

/// Reduced symbol of a named fixture at weight alpha.
evspec::ReducedSymbol fixture_symbol(const std::string& fixture, double alpha) {
    if (is_sphere_fixture(fixture)) {
        return evspec::toric_reduced_symbol(sphere_potential_fixture(fixture), {alpha});
    }
    if (is_radial_fixture(fixture)) {
        return evspec::schrodinger_reduced_symbol(radial_fixture(fixture), {alpha});
    }
    unknown_fixture(fixture, "round-sphere, quartic-sphere, oscillator, anharmonic");
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumOpts {
    std::string fixture = "round-sphere";
    double alpha = 1.0;
    std::string h_text = "1/100";
    int count = 10;
    int grid = 2000;
    double truncation_R = 8.0;
};

void run_spectrum(RunContext& ctx, const SpectrumOpts& o) {
    const double h = parse_h(o.h_text);
    const int k = weight_or_fail(o.alpha, h);
    const auto spec = fixture_spectrum(o.fixture, o.alpha, h, o.count, o.grid, o.truncation_R);

    ctx.inputs() = {{"fixture", o.fixture}, {"alpha", o.alpha}, {"h", h},
                    {"count", o.count},     {"grid", o.grid}};
    if (is_radial_fixture(o.fixture)) ctx.inputs()["truncation_R"] = o.truncation_R;

    ctx.save_csv("spectrum.csv", [&](std::ostream& os) {
        evspec::write_spectrum_csv(os, spec, o.grid, kEigenTol);
    });

    std::printf("fixture=%s k=%d h=%s count=%d\n", o.fixture.c_str(), k, o.h_text.c_str(),
                o.count);
    const std::size_t show = std::min<std::size_t>(spec.eigenvalues.size(), 5);
    for (std::size_t i = 0; i < show; ++i) {
        std::printf("  lambda[%zu] = %.12g\n", i, spec.eigenvalues[i]);
    }
    if (show < spec.eigenvalues.size()) {
        std::printf("  ... (%zu total, see spectrum.csv)\n", spec.eigenvalues.size());
    }
    ctx.results()["bottom"] = evspec::spectral_bottom(spec);
    ctx.finish("spectrum");
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureOpts {
    std::string fixture = "round-sphere";
    double alpha = 1.0;
    std::string h_list = "1/50,1/100,1/200";
    double lo = 1.5;
    double hi = 3.5;
    int grid = 1500;
    double truncation_R = 8.0;
    double expected_power = -1.0;
};

void run_measure(RunContext& ctx, const MeasureOpts& o) {
    const auto hs = parse_h_list(o.h_list);
    if (hs.size() < 3) throw UsageError("--h-list needs at least 3 values for the power fit");
    if (!(o.lo < o.hi)) throw UsageError("--lo must be below --hi");

    const evspec::TestFunction rho(o.lo, o.hi);
    const auto sym = fixture_symbol(o.fixture, o.alpha);

    std::vector<evspec::EquivariantSpectrum> specs;
    std::vector<double> mus;
    for (const double h : hs) {
        weight_or_fail(o.alpha, h);
        const int count = coverage_count(sym, o.hi, h);
        specs.push_back(fixture_spectrum(o.fixture, o.alpha, h, count, o.grid, o.truncation_R));
        mus.push_back(evspec::spectral_measure(specs.back(), rho));
    }

    const auto fit = evspec::leading_coefficient_fit(specs, rho, o.expected_power);
    const double smeared =
        evspec::smeared_measure(sym, rho) / (2.0 * std::numbers::pi);
    const double ratio = fit.coefficient / smeared;

    ctx.inputs() = {{"fixture", o.fixture},      {"alpha", o.alpha},
                    {"h_list", hs},              {"support", {o.lo, o.hi}},
                    {"grid", o.grid},            {"expected_power", o.expected_power}};
    ctx.save_csv("measure.csv", [&](std::ostream& os) {
        os << "# fixture = " << o.fixture << "\n";
        os << "# alpha = " << evspec::format_double(o.alpha) << "\n";
        os << "# support_lo = " << evspec::format_double(o.lo) << "\n";
        os << "# support_hi = " << evspec::format_double(o.hi) << "\n";
        os << "# power = " << evspec::format_double(fit.power) << "\n";
        os << "# coefficient = " << evspec::format_double(fit.coefficient) << "\n";
        os << "# smeared_over_2pi = " << evspec::format_double(smeared) << "\n";
        os << "h,mu\n";
        for (std::size_t j = 0; j < hs.size(); ++j) {
            os << evspec::format_double(hs[j]) << "," << evspec::format_double(mus[j]) << "\n";
        }
    });

    std::printf("fixture=%s alpha=%g sweep=%zu values of h\n", o.fixture.c_str(), o.alpha,
                hs.size());
    std::printf("  fitted power      = %.6f (free slope)\n", fit.power);
    std::printf("  coefficient       = %.10g (slope pinned to %g)\n", fit.coefficient,
                o.expected_power);
    std::printf("  smeared / (2 pi)  = %.10g\n", smeared);
    std::printf("  ratio             = %.6f\n", ratio);
    if (fit.monotone_warning) std::printf("  warning: measure not monotone across the sweep\n");

    ctx.results() = {{"power", fit.power},
                     {"coefficient", fit.coefficient},
                     {"smeared_over_2pi", smeared},
                     {"ratio", ratio},
                     {"monotone_warning", fit.monotone_warning}};
    ctx.finish("measure");
}

// ---------------------------------------------------------------------------
// verify-weyl
// ---------------------------------------------------------------------------

struct WeylOpts {
    std::string fixture = "round-sphere";
    double alpha = 1.0;
    std::string h_text = "1/100";
    double E = 4.0;
    int grid = 2000;
    double truncation_R = 8.0;
};

void run_verify_weyl(RunContext& ctx, const WeylOpts& o) {
    const double h = parse_h(o.h_text);
    weight_or_fail(o.alpha, h);

    const auto sym = fixture_symbol(o.fixture, o.alpha);
    const double prediction =
        evspec::sublevel_volume(sym, o.E) / (2.0 * std::numbers::pi * h);
    const int needed = coverage_count(sym, o.E, h);
    const auto spec = fixture_spectrum(o.fixture, o.alpha, h, needed, o.grid, o.truncation_R);
    const int count = evspec::counting_function(spec, o.E);

    ctx.inputs() = {{"fixture", o.fixture}, {"alpha", o.alpha}, {"h", h},
                    {"E", o.E},             {"grid", o.grid}};
    ctx.save_csv("weyl.csv", [&](std::ostream& os) {
        os << "# fixture = " << o.fixture << "\n";
        os << "# alpha = " << evspec::format_double(o.alpha) << "\n";
        os << "# h = " << evspec::format_double(h) << "\n";
        os << "E,count,prediction\n";
        os << evspec::format_double(o.E) << "," << count << ","
           << evspec::format_double(prediction) << "\n";
    });

    std::printf("count=%d prediction=%.1f\n", count, prediction);
    std::printf("  |count - prediction| = %.3f\n", std::abs(count - prediction));

    ctx.results() = {{"count", count}, {"prediction", prediction}};
    ctx.finish("verify-weyl");
}

// ---------------------------------------------------------------------------
// invert-schrodinger
// ---------------------------------------------------------------------------

struct InvertSchrodingerOpts {
    std::string fixture = "oscillator";
    std::string mode = "exact";  // exact | spectral
    std::string h_text = "1/200";
    int samples = 400;
    double alpha_max = 6.0;
    int k_step = 3;
    int k_count = 400;
    double truncation_R = 6.0;
    int grid = 1200;
    double s_lo = 0.5;
    double s_hi = 2.0;
    int s_count = 151;
    std::string min_csv;
};

void run_invert_schrodinger(RunContext& ctx, const InvertSchrodingerOpts& o) {
    evspec::MinFunction mf;
    ctx.inputs() = {{"fixture", o.fixture}, {"mode", o.mode}};

    bool have_truth = false;
    if (!o.min_csv.empty()) {
        auto is = open_existing(o.min_csv);
        mf = evspec::read_min_function_csv(is);
        ctx.inputs()["min_csv"] = o.min_csv;
    } else if (o.mode == "exact") {
        const auto V = radial_fixture(o.fixture);
        std::vector<double> alpha(static_cast<std::size_t>(o.samples));
        for (int j = 0; j < o.samples; ++j) {
            alpha[static_cast<std::size_t>(j)] =
                o.alpha_max * static_cast<double>(j + 1) / static_cast<double>(o.samples);
        }
        mf = evspec::tabulate_min_function(V, std::move(alpha));
        ctx.inputs()["samples"] = o.samples;
        ctx.inputs()["alpha_max"] = o.alpha_max;
        have_truth = true;
    } else if (o.mode == "spectral") {
        const double h = parse_h(o.h_text);
        const auto V = radial_fixture(o.fixture);
        mf.n = 1;
        for (int j = 1; j <= o.k_count; ++j) {
            const double alpha = h * static_cast<double>(o.k_step * j);
            weight_or_fail(alpha, h);
            mf.alpha1.push_back(alpha);
            mf.m.push_back(evspec::spectral_min(V, alpha, h, o.truncation_R, o.grid));
        }
        ctx.inputs()["h"] = h;
        ctx.inputs()["k_step"] = o.k_step;
        ctx.inputs()["k_count"] = o.k_count;
        ctx.inputs()["truncation_R"] = o.truncation_R;
        ctx.inputs()["grid"] = o.grid;
        have_truth = true;
    } else {
        throw UsageError("--mode must be 'exact' or 'spectral'");
    }

    evspec::validate_min_function(mf);

    const auto s = linspace(o.s_lo, o.s_hi, o.s_count);
    const auto rec =
        evspec::recover_potential(mf, s, mf.n == 2 ? s : std::vector<double>{});
    ctx.inputs()["s_grid"] = {o.s_lo, o.s_hi, o.s_count};

    ctx.save_csv("min_function.csv",
                 [&](std::ostream& os) { evspec::write_min_function_csv(os, mf); });
    ctx.save_csv("recovery.csv",
                 [&](std::ostream& os) { evspec::write_recovery_csv(os, rec, mf); });

    std::printf("fixture=%s mode=%s: recovered V on %zu grid points\n", o.fixture.c_str(),
                o.mode.c_str(), rec.V.size());
    if (have_truth && mf.n == 1) {
        const auto truth = radial_scalar(o.fixture);
        double sup_abs = 0.0;
        double sup_rel = 0.0;
        for (std::size_t j = 0; j < rec.V.size(); ++j) {
            const double t = truth(rec.s1[j]);
            sup_abs = std::max(sup_abs, std::abs(rec.V[j] - t));
            sup_rel = std::max(sup_rel, std::abs(rec.V[j] - t) / std::abs(t));
        }
        std::printf("  sup |V_rec - V|     = %.6e\n", sup_abs);
        std::printf("  sup rel. deviation  = %.6e\n", sup_rel);
        ctx.results()["sup_abs_error"] = sup_abs;
        ctx.results()["sup_rel_error"] = sup_rel;
    }
    ctx.finish("invert-schrodinger");
}

// ---------------------------------------------------------------------------
// invert-s2
// ---------------------------------------------------------------------------

struct InvertS2Opts {
    std::string fixture = "round-sphere";
    double t0 = 0.5;
    double dt = 2.5e-3;
    double t_max = 11.0;
    int resolution = 4000;
    double x_max = 0.85;
    double window = 0.8;
    int resolve_k = 0;  // when > 0, re-solve this weight from the recovered profile
    int resolve_count = 3;
    int resolve_grid = 2000;
};

void run_invert_s2(RunContext& ctx, const InvertS2Opts& o) {
    if (!(o.t0 > 0.0) || !(o.dt > 0.0) || !(o.t_max > o.t0)) {
        throw UsageError("need 0 < --t0 < --t-max and --dt > 0");
    }
    const auto pot = sphere_potential_fixture(o.fixture);
    const auto sym = evspec::toric_reduced_symbol(pot, {1.0});

    evspec::QuadratureSpec qs;
    qs.resolution = o.resolution;
    qs.seed = ctx.seed();
    const auto count = static_cast<std::size_t>(std::floor((o.t_max - o.t0) / o.dt)) + 1;

    const auto density = evspec::pushforward_density(sym, o.t0, o.dt, count, qs);
    const auto pair = evspec::density_to_abel(density, 1.0);
    const auto profile = evspec::recover_profile(pair, o.x_max);

    ctx.inputs() = {{"fixture", o.fixture}, {"t0", o.t0},
                    {"dt", o.dt},           {"t_max", o.t_max},
                    {"resolution", o.resolution}, {"x_max", o.x_max},
                    {"window", o.window}};

    // The density writer records its own seed (the Monte-Carlo one).
    ctx.save_csv("density.csv",
                 [&](std::ostream& os) { evspec::write_density_csv(os, density); },
                 /*stamp_seed=*/false);
    ctx.save_csv("abel.csv", [&](std::ostream& os) { evspec::write_abel_csv(os, pair); });

    const auto truth = sphere_truth_gdd(o.fixture);
    const auto xs = linspace(-o.window, o.window, 161);
    double max_rel = 0.0;
    ctx.save_csv("profile.csv", [&](std::ostream& os) {
        os << "# fixture = " << o.fixture << "\n";
        os << "# x_max = " << evspec::format_double(o.x_max) << "\n";
        os << "x,gdd,gdd_truth,rel_err\n";
        for (const double x : xs) {
            const double rec = profile(x);
            const double t = truth(x);
            const double rel = std::abs(rec - t) / std::abs(t);
            max_rel = std::max(max_rel, rel);
            os << evspec::format_double(x) << "," << evspec::format_double(rec) << ","
               << evspec::format_double(t) << "," << evspec::format_double(rel) << "\n";
        }
    });

    std::printf("fixture=%s: density (%zu nodes) -> Abel -> profile\n", o.fixture.c_str(),
                count);
    std::printf("  estimated bottom c         = %.10g\n", pair.c);
    std::printf("  max rel. error, |x| <= %g  = %.6e\n", o.window, max_rel);
    ctx.results()["bottom_c"] = pair.c;
    ctx.results()["max_rel_error"] = max_rel;

    if (o.resolve_k > 0) {
        const auto ev_rec = evspec::s2_equivariant_eigenvalues(profile, o.resolve_k,
                                                               o.resolve_count, o.resolve_grid);
        const auto ev_true = evspec::s2_equivariant_eigenvalues(
            profile_fixture(o.fixture), o.resolve_k, o.resolve_count, o.resolve_grid);
        std::printf("  re-solved weight k=%d eigenvalues (recovered vs true):\n", o.resolve_k);
        json resolved = json::array();
        for (int i = 0; i < o.resolve_count; ++i) {
            const auto j = static_cast<std::size_t>(i);
            const double rel = std::abs(ev_rec[j] - ev_true[j]) / std::abs(ev_true[j]);
            std::printf("    mu[%d] = %.10g vs %.10g (rel %.3e)\n", i, ev_rec[j], ev_true[j],
                        rel);
            resolved.push_back({{"recovered", ev_rec[j]}, {"true", ev_true[j]}, {"rel", rel}});
        }
        ctx.results()["resolved_eigenvalues"] = resolved;
        ctx.inputs()["resolve_k"] = o.resolve_k;
        ctx.inputs()["resolve_count"] = o.resolve_count;
        ctx.inputs()["resolve_grid"] = o.resolve_grid;
    }
    ctx.finish("invert-s2");
}

// ---------------------------------------------------------------------------
// reconstruct-polytope
// ---------------------------------------------------------------------------

struct ReconstructOpts {
    std::string fixture = "simplex";
    bool fixture_explicit = false;
    int bound = 2;
    bool exact = false;
    std::string signatures_path;
};

void run_reconstruct(RunContext& ctx, const ReconstructOpts& o) {
    std::vector<evspec::FacetSignature> sigs;
    std::optional<evspec::LabeledPolytope> truth;

    ctx.inputs() = {{"bound", o.bound}, {"exact", o.exact}};
    if (!o.signatures_path.empty()) {
        auto is = open_existing(o.signatures_path);
        sigs = evspec::read_signatures_csv(is);
        ctx.inputs()["signatures"] = o.signatures_path;
        if (o.fixture_explicit) truth = polytope_fixture(o.fixture);
        std::printf("read %zu signatures from %s\n", sigs.size(), o.signatures_path.c_str());
    } else {
        const auto P = polytope_fixture(o.fixture);
        truth = P;
        ctx.inputs()["fixture"] = o.fixture;
        if (o.exact) {
            sigs = evspec::exact_signatures(P);
            std::printf("fixture=%s: %zu exact signatures\n", o.fixture.c_str(), sigs.size());
        } else {
            const auto pot = evspec::SymplecticPotential::canonical(P);
            const evspec::HeatOracle oracle = [&](std::span<const double> u, double t) {
                return evspec::heat_integral(pot, u, t);
            };
            const auto schedule = evspec::default_t_schedule();
            const auto det = evspec::detect_facets(oracle, o.bound, schedule, P.diameter());
            sigs = det.signatures;
            std::printf("fixture=%s: detected %zu signatures, %zu undecided directions\n",
                        o.fixture.c_str(), sigs.size(), det.undecided.size());
            json undecided = json::array();
            for (const auto& u : det.undecided) {
                std::printf("  undecided: (%lld, %lld)\n", static_cast<long long>(u[0]),
                            static_cast<long long>(u[1]));
                undecided.push_back({u[0], u[1]});
            }
            ctx.results()["undecided"] = undecided;
        }
    }

    for (const auto& s : sigs) {
        std::printf("  normal (%lld, %lld): lattice volume %.10g\n",
                    static_cast<long long>(s.normal[0]), static_cast<long long>(s.normal[1]),
                    s.lattice_volume);
    }
    ctx.save_csv("signatures.csv",
                 [&](std::ostream& os) { evspec::write_signatures_csv(os, sigs); });

    const auto [polygon, mirror] = evspec::minkowski_polygon(sigs);
    ctx.save_csv("polygon.csv",
                 [&](std::ostream& os) { evspec::write_polygon_csv(os, polygon); });
    ctx.save_csv("polygon_mirror.csv",
                 [&](std::ostream& os) { evspec::write_polygon_csv(os, mirror); });
    std::printf("reconstructed polygon: %zu vertices, area %.10g\n", polygon.vertices.size(),
                polygon.area());
    ctx.results()["area"] = polygon.area();

    if (truth) {
        const auto reference = evspec::polygon_of(*truth);
        const double d = std::min(evspec::vertex_distance(polygon, reference),
                                  evspec::vertex_distance(mirror, reference));
        std::printf("vertex distance to fixture (up to translation/reflection) = %.6e\n", d);
        ctx.results()["vertex_distance"] = d;
    }
    ctx.finish("reconstruct-polytope");
}

// ---------------------------------------------------------------------------
// wps-recover
// ---------------------------------------------------------------------------

struct WpsOpts {
    std::string weights = "2,3,5";
    int n_max = 200;
    int trials = 1;
    std::int64_t prime_bound = 50;
    int d_min = 2;
    int d_max = 4;
    double coeff_lo = 0.2;
    double coeff_hi = 1.7;
    std::string samples_path;
};

std::vector<std::int64_t> parse_weight_list(const std::string& text) {
    std::vector<std::int64_t> ws;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        long long w = 0;
        try {
            w = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--weights: '" + item + "' is not an integer");
        }
        if (used != item.size()) throw UsageError("--weights: '" + item + "' is not an integer");
        ws.push_back(w);
    }
    if (ws.empty()) throw UsageError("--weights: empty list");
    return ws;
}

void report_recovery(const evspec::WeightRecovery& rec, json& out) {
    out["realness_period"] = rec.realness_period;
    if (rec.candidates.empty()) {
        std::printf("no weight vector recovered: %s\n", rec.diagnostics.c_str());
        out["recovered"] = json::array();
        out["diagnostics"] = rec.diagnostics;
        return;
    }
    const auto& ws = rec.candidates.front().weights();
    std::string joined;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        joined += (j ? "," : "") + std::to_string(ws[j]);
    }
    std::printf("recovered weights {%s} with realness period N0=%lld\n", joined.c_str(),
                static_cast<long long>(rec.realness_period));
    out["recovered"] = ws;
}

void run_wps_recover(RunContext& ctx, const WpsOpts& o) {
    ctx.inputs() = {{"prime_bound", o.prime_bound}, {"d_min", o.d_min}, {"d_max", o.d_max}};

    if (!o.samples_path.empty()) {
        auto is = open_existing(o.samples_path);
        const auto samples = evspec::read_samples_csv(is);
        ctx.inputs()["samples"] = o.samples_path;
        const auto rec =
            evspec::recover_weights(samples, o.prime_bound, o.d_min, o.d_max);
        report_recovery(rec, ctx.results());
        ctx.finish("wps-recover");
        return;
    }

    std::vector<std::int64_t> ws = parse_weight_list(o.weights);
    std::optional<evspec::WeightVector> w;
    try {
        w.emplace(std::move(ws));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--weights: ") + e.what());
    }
    const auto pairs = evspec::isotropy_list(*w);
    ctx.inputs()["weights"] = w->weights();
    ctx.inputs()["n_max"] = o.n_max;
    ctx.inputs()["trials"] = o.trials;
    ctx.inputs()["coefficients"] = {o.coeff_lo, o.coeff_hi};

    int failures = 0;
    json trial_log = json::array();
    for (int trial = 0; trial < o.trials; ++trial) {
        std::mt19937_64 rng(ctx.seed() + static_cast<std::uint64_t>(trial));
        std::uniform_real_distribution<double> U(o.coeff_lo, o.coeff_hi);
        std::vector<double> coeffs(pairs.size());
        for (auto& c : coeffs) c = U(rng);

        std::vector<evspec::TraceSample> samples;
        samples.reserve(static_cast<std::size_t>(o.n_max));
        for (std::int64_t N = 1; N <= o.n_max; ++N) {
            samples.push_back({N, evspec::trace_sum(*w, coeffs, N)});
        }
        if (trial == 0) {
            ctx.save_csv("samples.csv", [&](std::ostream& os) {
                evspec::write_samples_csv(os, samples);
            });
        }

        const auto rec = evspec::recover_weights(samples, o.prime_bound, o.d_min, o.d_max);
        const bool ok = rec.candidates.size() == 1 &&
                        rec.candidates.front().weights() == w->weights();
        if (!ok) ++failures;
        std::printf("trial %d: ", trial);
        json entry;
        report_recovery(rec, entry);
        entry["ok"] = ok;
        trial_log.push_back(entry);
    }
    std::printf("trials=%d failures=%d\n", o.trials, failures);
    ctx.results()["trials"] = trial_log;
    ctx.results()["failures"] = failures;
    ctx.finish("wps-recover");
}

// ---------------------------------------------------------------------------
// stationary-phase
// ---------------------------------------------------------------------------

struct StationaryPhaseOpts {
    int dim = 1;
    std::string h_list = "0.1,0.05,0.025,0.0125";
    double plateau = -1.0;  // < 0: per-dimension default
    double support = -1.0;
};

void run_stationary_phase(RunContext& ctx, const StationaryPhaseOpts& o) {
    if (o.dim != 1 && o.dim != 2) throw UsageError("--dim must be 1 or 2");
    const auto hs = parse_double_list(o.h_list, "--h-list");
    for (const double h : hs) {
        if (!(h > 0.0)) throw UsageError("--h-list: values must be positive");
    }

    const double plateau = o.plateau > 0.0 ? o.plateau : (o.dim == 1 ? 6.0 : 4.5);
    const double support = o.support > 0.0 ? o.support : (o.dim == 1 ? 9.0 : 6.5);
    if (!(plateau < support)) throw UsageError("--plateau must be below --support");

    const auto phase = o.dim == 1
                           ? evspec::QuadraticPhase::from_entries(1, std::array<double, 1>{1.0})
                           : evspec::QuadraticPhase::from_entries(
                                 2, std::array<double, 4>{1.0, 0.0, 0.0, 1.0});
    const auto f = evspec::gaussian_plateau_fixture(o.dim, plateau, support);

    std::vector<std::complex<double>> osc(hs.size());
    std::array<std::vector<double>, 3> errs;
    for (auto& e : errs) e.resize(hs.size());
    for (std::size_t j = 0; j < hs.size(); ++j) {
        osc[j] = evspec::oscillatory_integral(phase, f, hs[j]);
        for (int terms = 1; terms <= 3; ++terms) {
            errs[static_cast<std::size_t>(terms - 1)][j] =
                std::abs(osc[j] - evspec::sp_asymptotic(phase, f, hs[j], terms));
        }
    }

    ctx.inputs() = {{"dim", o.dim},         {"h_list", hs},
                    {"plateau", plateau},   {"support", support}};
    ctx.save_csv("sp_table.csv", [&](std::ostream& os) {
        os << "# dim = " << o.dim << "\n";
        os << "# plateau = " << evspec::format_double(plateau) << "\n";
        os << "# support = " << evspec::format_double(support) << "\n";
        os << "h,osc_re,osc_im,err1,err2,err3\n";
        for (std::size_t j = 0; j < hs.size(); ++j) {
            os << evspec::format_double(hs[j]) << "," << evspec::format_double(osc[j].real())
               << "," << evspec::format_double(osc[j].imag()) << ","
               << evspec::format_double(errs[0][j]) << "," << evspec::format_double(errs[1][j])
               << "," << evspec::format_double(errs[2][j]) << "\n";
        }
    });

    std::printf("dim=%d over %zu values of h\n", o.dim, hs.size());
    json slopes = json::array();
    for (int terms = 1; terms <= 3; ++terms) {
        const double predicted = static_cast<double>(o.dim) / 2.0 + terms;
        if (hs.size() >= 2) {
            const double slope = loglog_slope(hs, errs[static_cast<std::size_t>(terms - 1)]);
            std::printf("  %d-term remainder: observed order %.4f (predicted %.1f)\n", terms,
                        slope, predicted);
            slopes.push_back({{"terms", terms}, {"observed", slope}, {"predicted", predicted}});
        }
    }
    ctx.results()["slopes"] = slopes;
    ctx.finish("stationary-phase");
}

}  // namespace

// ---------------------------------------------------------------------------
// main: option wiring and exit-code mapping
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
    CLI::App app{"evspec: equivariant spectra, semiclassical measures, and their inverse problems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.footer(
        "Exit codes:\n"
        "  0  success\n"
        "  1  computation failed\n"
        "  2  usage or configuration error\n"
        "  3  unknown fixture\n"
        "  4  invalid h (must be the reciprocal of a positive integer; alpha/h integral)\n"
        "  5  missing input file");

    // --h is a spectral parameter here, so help lives on --help alone.
    app.set_help_flag("--help", "Print this help message and exit");

    std::string out_dir = ".";
    std::uint64_t seed = 20260814;
    app.add_option("--out", out_dir, "Output directory for CSV files and manifest.json")
        ->capture_default_str();
    app.add_option("--seed", seed,
                   "Seed stamped into outputs and used by randomized subcommands")
        ->capture_default_str();
    app.set_config("--config", "",
                   "Read options from a TOML/INI file with [subcommand] sections; "
                   "command-line flags win");

    const auto context = [&]() { return RunContext(out_dir, seed); };

    // Subcommands share the parent's option namespace (fallthrough) and the
    // long-only help flag.
    const auto add_subcommand = [&](const std::string& name, const std::string& description) {
        auto* sc = app.add_subcommand(name, description);
        sc->fallthrough();
        sc->set_help_flag("--help", "Print this help message and exit");
        return sc;
    };

    SpectrumOpts spectrum_opts;
    {
        auto* sc = add_subcommand(
            "spectrum", "Equivariant spectrum at fixed (alpha, h), written as spectrum.csv");
        sc->add_option("--fixture", spectrum_opts.fixture,
                       "round-sphere | quartic-sphere | oscillator | anharmonic")
            ->capture_default_str();
        sc->add_option("--alpha", spectrum_opts.alpha, "Weight parameter alpha (alpha/h integral)")
            ->capture_default_str();
        sc->add_option("--h", spectrum_opts.h_text, "Semiclassical parameter, e.g. 1/100")
            ->capture_default_str();
        sc->add_option("--count", spectrum_opts.count, "Number of eigenvalues")
            ->capture_default_str();
        sc->add_option("--grid", spectrum_opts.grid, "Coarse discretization size")
            ->capture_default_str();
        sc->add_option("--R", spectrum_opts.truncation_R,
                       "Truncation radius (radial fixtures only)")
            ->capture_default_str();
        sc->callback([&] {
            auto ctx = context();
            run_spectrum(ctx, spectrum_opts);
        });
    }

    MeasureOpts measure_opts;
    {
        auto* sc = add_subcommand(
            "measure",
            "Spectral measure of a bump across an h sweep, with the leading power fit "
            "and the smeared-measure comparison");
        sc->add_option("--fixture", measure_opts.fixture,
                       "round-sphere | quartic-sphere | oscillator | anharmonic")
            ->capture_default_str();
        sc->add_option("--alpha", measure_opts.alpha, "Weight parameter alpha")
            ->capture_default_str();
        sc->add_option("--h-list", measure_opts.h_list, "Comma-separated h sweep (>= 3 values)")
            ->capture_default_str();
        sc->add_option("--lo", measure_opts.lo, "Bump support lower end")->capture_default_str();
        sc->add_option("--hi", measure_opts.hi, "Bump support upper end")->capture_default_str();
        sc->add_option("--grid", measure_opts.grid, "Eigensolver grid size")
            ->capture_default_str();
        sc->add_option("--R", measure_opts.truncation_R,
                       "Truncation radius (radial fixtures only)")
            ->capture_default_str();
        sc->add_option("--expected-power", measure_opts.expected_power,
                       "Power pinned for the coefficient fit")
            ->capture_default_str();
        sc->callback([&] {
            auto ctx = context();
            run_measure(ctx, measure_opts);
        });
    }

    WeylOpts weyl_opts;
    {
        auto* sc = add_subcommand(
            "verify-weyl",
            "Compare the counting function at E with the phase-space volume prediction");
        sc->add_option("--fixture", weyl_opts.fixture,
                       "round-sphere | quartic-sphere | oscillator | anharmonic")
            ->capture_default_str();
        sc->add_option("--alpha", weyl_opts.alpha, "Weight parameter alpha")
            ->capture_default_str();
        sc->add_option("--h", weyl_opts.h_text, "Semiclassical parameter, e.g. 1/100")
            ->capture_default_str();
        sc->add_option("--E", weyl_opts.E, "Counting threshold (symbol units)")
            ->capture_default_str();
        sc->add_option("--grid", weyl_opts.grid, "Eigensolver grid size")->capture_default_str();
        sc->add_option("--R", weyl_opts.truncation_R, "Truncation radius (radial fixtures only)")
            ->capture_default_str();
        sc->callback([&] {
            auto ctx = context();
            run_verify_weyl(ctx, weyl_opts);
        });
    }

    InvertSchrodingerOpts invsch_opts;
    {
        auto* sc = add_subcommand(
            "invert-schrodinger",
            "Recover a radial potential from its minimum function by concave duality");
        sc->add_option("--fixture", invsch_opts.fixture, "oscillator | anharmonic")
            ->capture_default_str();
        sc->add_option("--mode", invsch_opts.mode,
                       "exact: m(alpha) by direct minimization; spectral: m(alpha) from "
                       "bottom eigenvalues")
            ->capture_default_str();
        sc->add_option("--h", invsch_opts.h_text, "Semiclassical parameter (spectral mode)")
            ->capture_default_str();
        sc->add_option("--samples", invsch_opts.samples, "Number of alpha samples (exact mode)")
            ->capture_default_str();
        sc->add_option("--alpha-max", invsch_opts.alpha_max, "Largest alpha sample (exact mode)")
            ->capture_default_str();
        sc->add_option("--k-step", invsch_opts.k_step, "Weight stride k = k-step * j (spectral)")
            ->capture_default_str();
        sc->add_option("--k-count", invsch_opts.k_count, "Number of weights (spectral mode)")
            ->capture_default_str();
        sc->add_option("--R", invsch_opts.truncation_R, "Truncation radius (spectral mode)")
            ->capture_default_str();
        sc->add_option("--grid", invsch_opts.grid, "Eigensolver grid size (spectral mode)")
            ->capture_default_str();
        sc->add_option("--s-lo", invsch_opts.s_lo, "Recovery grid lower end")
            ->capture_default_str();
        sc->add_option("--s-hi", invsch_opts.s_hi, "Recovery grid upper end")
            ->capture_default_str();
        sc->add_option("--s-count", invsch_opts.s_count, "Recovery grid size")
            ->capture_default_str();
        sc->add_option("--min-csv", invsch_opts.min_csv,
                       "Read the minimum function from this CSV instead of tabulating");
        sc->callback([&] {
            auto ctx = context();
            run_invert_schrodinger(ctx, invsch_opts);
        });
    }

    InvertS2Opts invs2_opts;
    {
        auto* sc = add_subcommand(
            "invert-s2",
            "Recover an S^2 metric profile from its push-forward density via Abel inversion");
        sc->add_option("--fixture", invs2_opts.fixture, "round-sphere | quartic-sphere")
            ->capture_default_str();
        sc->add_option("--t0", invs2_opts.t0, "First density node")->capture_default_str();
        sc->add_option("--dt", invs2_opts.dt, "Density grid spacing")->capture_default_str();
        sc->add_option("--t-max", invs2_opts.t_max, "Last density node (approximate)")
            ->capture_default_str();
        sc->add_option("--resolution", invs2_opts.resolution, "Volume quadrature resolution")
            ->capture_default_str();
        sc->add_option("--x-max", invs2_opts.x_max, "Recovery window half-width")
            ->capture_default_str();
        sc->add_option("--window", invs2_opts.window, "Error-report window half-width")
            ->capture_default_str();
        sc->add_option("--resolve-k", invs2_opts.resolve_k,
                       "When > 0, re-solve this weight from the recovered profile")
            ->capture_default_str();
        sc->add_option("--resolve-count", invs2_opts.resolve_count,
                       "Eigenvalues per re-solved weight")
            ->capture_default_str();
        sc->add_option("--resolve-grid", invs2_opts.resolve_grid, "Re-solve grid size")
            ->capture_default_str();
        sc->callback([&] {
            auto ctx = context();
            run_invert_s2(ctx, invs2_opts);
        });
    }

    ReconstructOpts recon_opts;
    {
        auto* sc = add_subcommand(
            "reconstruct-polytope",
            "Detect facet signatures from heat-integral asymptotics and rebuild the polygon "
            "(a rectangle fails by design: opposite facets are indistinguishable)");
        auto* fix = sc->add_option("--fixture", recon_opts.fixture, "simplex | rectangle | quad")
                        ->capture_default_str();
        sc->add_option("--bound", recon_opts.bound,
                       "Euclidean bound for the primitive-normal scan (quad needs 3)")
            ->capture_default_str();
        sc->add_flag("--exact", recon_opts.exact,
                     "Use ground-truth signatures instead of heat detection");
        sc->add_option("--signatures", recon_opts.signatures_path,
                       "Read signatures from this CSV instead of detecting");
        sc->callback([&, fix] {
            recon_opts.fixture_explicit = fix->count() > 0;
            auto ctx = context();
            run_reconstruct(ctx, recon_opts);
        });
    }

    WpsOpts wps_opts;
    {
        auto* sc = add_subcommand(
            "wps-recover",
            "Recover distinct prime weights from trace samples (synthesized with random "
            "positive coefficients unless --samples is given)");
        sc->add_option("--weights", wps_opts.weights, "True weights for synthesis, e.g. 2,3,5")
            ->capture_default_str();
        sc->add_option("--n-max", wps_opts.n_max, "Largest sampled N")->capture_default_str();
        sc->add_option("--trials", wps_opts.trials, "Independent synthesis trials")
            ->capture_default_str();
        sc->add_option("--prime-bound", wps_opts.prime_bound, "Largest admissible prime")
            ->capture_default_str();
        sc->add_option("--d-min", wps_opts.d_min, "Smallest admissible weight count")
            ->capture_default_str();
        sc->add_option("--d-max", wps_opts.d_max, "Largest admissible weight count")
            ->capture_default_str();
        sc->add_option("--coeff-lo", wps_opts.coeff_lo, "Coefficient range lower end")
            ->capture_default_str();
        sc->add_option("--coeff-hi", wps_opts.coeff_hi, "Coefficient range upper end")
            ->capture_default_str();
        sc->add_option("--samples", wps_opts.samples_path,
                       "Read trace samples from this CSV instead of synthesizing");
        sc->callback([&] {
            auto ctx = context();
            run_wps_recover(ctx, wps_opts);
        });
    }

    StationaryPhaseOpts sp_opts;
    {
        auto* sc = add_subcommand(
            "stationary-phase",
            "Measure the remainder orders of the stationary-phase expansion "
            "(dim 2 below h = 0.05 is expensive: the quadrature grid grows like 1/h^2)");
        sc->add_option("--dim", sp_opts.dim, "Dimension (1 or 2)")->capture_default_str();
        sc->add_option("--h-list", sp_opts.h_list, "Comma-separated h values (any positive)")
            ->capture_default_str();
        sc->add_option("--plateau", sp_opts.plateau,
                       "Gaussian plateau half-width (default 6 / 4.5 by dim)");
        sc->add_option("--support", sp_opts.support,
                       "Support half-width (default 9 / 6.5 by dim)");
        sc->callback([&] {
            auto ctx = context();
            run_stationary_phase(ctx, sp_opts);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const FixtureError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFixture;
    } catch (const HFormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kBadH;
    } catch (const InputFileError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kMissingFile;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntime;
    }
    return kOk;
}
