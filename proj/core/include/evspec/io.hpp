/** \file io.hpp
 *  \brief Serialization of the pipeline types: a JSON polytope interchange
 *         format and small CSV formats for spectra, densities, tabulated
 *         minima, Abel pairs, facet signatures, polygons and trace samples.
 *
 *  All floating-point output goes through format_double (17 significant
 *  digits), which round-trips IEEE doubles exactly and keeps repeated runs
 *  byte-identical.  CSV files consist of '#'-prefixed "key = value" metadata
 *  lines, one column-name row, and comma-separated data rows; readers accept
 *  exactly what the writers emit and throw std::runtime_error with a line
 *  number on malformed input.
 */

#ifndef EVSPEC_IO_HPP
#define EVSPEC_IO_HPP

#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evspec/polygon_recon.hpp"
#include "evspec/polytope.hpp"
#include "evspec/reduced_symbol.hpp"
#include "evspec/s2_inverse.hpp"
#include "evspec/schrodinger_inverse.hpp"
#include "evspec/spectra.hpp"
#include "evspec/wps.hpp"

namespace evspec {

/// Shortest 17-significant-digit decimal form of x ("%.17g"); parses back to
/// the identical double.
std::string format_double(double x);

// --- polytope interchange -------------------------------------------------
// JSON object {"n": int, "facets": [{"eta0": [ints], "label": int,
// "offset": float}, ...]}; integers stay exact, offsets are decimal floats.

void write_polytope(std::ostream& os, const LabeledPolytope& P);
LabeledPolytope read_polytope(std::istream& is);

// --- CSV formats ------------------------------------------------------------

/// Pushforward density: metadata seed; columns (t, q) on the uniform grid.
void write_density_csv(std::ostream& os, const DensityGrid& density);
DensityGrid read_density_csv(std::istream& is);

/// Spectrum file payload: the spectrum plus the solver parameters recorded in
/// its metadata (grid points and eigensolver tolerance eps).
struct SpectrumRecord {
    EquivariantSpectrum spectrum;
    int grid = 0;
    double eps = 0.0;
};

/// Metadata alpha, h, grid, eps; columns (index, eigenvalue, multiplicity).
/// The 1-D fiber problems have simple spectra, so multiplicity is written as
/// 1 and validated on read.
void write_spectrum_csv(std::ostream& os, const EquivariantSpectrum& spectrum, int grid,
                        double eps);
SpectrumRecord read_spectrum_csv(std::istream& is);

/// Tabulated minimum function: metadata n; columns (alpha1[, alpha2], m) in
/// row-major order (alpha1 outer loop).
void write_min_function_csv(std::ostream& os, const MinFunction& mf);
MinFunction read_min_function_csv(std::istream& is);

/// Recovered potential: metadata n; columns (s1[, s2], V, a1[, a2]) where the
/// a columns hold the dual point attaining the sup, resolved against the
/// minimum-function grid the recovery ran on (a_i = alpha_i^2).
void write_recovery_csv(std::ostream& os, const RecoveredPotential& rec, const MinFunction& mf);

/// Abel pair: metadata c and alpha; columns (t, D) on the uniform grid.
void write_abel_csv(std::ostream& os, const AbelPair& pair);
AbelPair read_abel_csv(std::istream& is);

/// Facet signatures: columns (eta_x, eta_y, lattice_volume).
void write_signatures_csv(std::ostream& os, std::span<const FacetSignature> signatures);
std::vector<FacetSignature> read_signatures_csv(std::istream& is);

/// Polygon vertices, counterclockwise: columns (x, y).
void write_polygon_csv(std::ostream& os, const Polygon& polygon);

/// Trace samples: columns (N, re, im).
void write_samples_csv(std::ostream& os, std::span<const TraceSample> samples);
std::vector<TraceSample> read_samples_csv(std::istream& is);

// --- file-path conveniences -------------------------------------------------

/// Open `path` for writing and run `writer` on the stream; throws
/// std::runtime_error naming the path when it cannot be opened or written.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer);

/// Open `path` for reading; throws std::runtime_error naming the path when
/// the file cannot be opened.
std::ifstream open_input(const std::string& path);

}  // namespace evspec

#endif
