#include "evspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evspec {

namespace {

/// Lines of a CSV stream split into metadata ("# key = value"), with data
/// rows kept as raw strings; the single column-name row is skipped.
struct CsvDocument {
    std::map<std::string, std::string> meta;
    std::vector<std::string> rows;
    std::vector<std::size_t> row_lines;  // 1-based source lines for messages
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

CsvDocument parse_csv(std::istream& is) {
    CsvDocument doc;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto eq = t.find('=');
            if (eq != std::string::npos) {
                doc.meta[trim(t.substr(1, eq - 1))] = trim(t.substr(eq + 1));
            }
            continue;
        }
        if (!header_seen) {  // the column-name row
            header_seen = true;
            continue;
        }
        doc.rows.push_back(t);
        doc.row_lines.push_back(lineno);
    }
    return doc;
}

std::vector<std::string> split_fields(const std::string& row) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : row) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_double(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: line " + std::to_string(lineno) + ": '" + s +
                                 "' is not a number");
    }
}

std::int64_t parse_int(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: line " + std::to_string(lineno) + ": '" + s +
                                 "' is not an integer");
    }
}

double meta_double(const CsvDocument& doc, const std::string& key) {
    const auto it = doc.meta.find(key);
    if (it == doc.meta.end()) {
        throw std::runtime_error("csv: missing metadata line '# " + key + " = ...'");
    }
    return parse_double(it->second, 0);
}

std::vector<std::vector<double>> numeric_rows(const CsvDocument& doc, std::size_t columns,
                                              const std::string& what) {
    std::vector<std::vector<double>> out;
    out.reserve(doc.rows.size());
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const auto fields = split_fields(doc.rows[r]);
        if (fields.size() != columns) {
            throw std::runtime_error(what + ": line " + std::to_string(doc.row_lines[r]) +
                                     ": expected " + std::to_string(columns) + " columns, got " +
                                     std::to_string(fields.size()));
        }
        std::vector<double> vals;
        vals.reserve(columns);
        for (const auto& f : fields) vals.push_back(parse_double(f, doc.row_lines[r]));
        out.push_back(std::move(vals));
    }
    if (out.empty()) throw std::runtime_error(what + ": no data rows");
    return out;
}

/// Rebuild a uniform grid from a sampled abscissa column; validates spacing
/// uniformity to 1e-9 relative.
GridFunction grid_from_columns(const std::vector<std::vector<double>>& rows, std::size_t xcol,
                               std::size_t ycol, const std::string& what) {
    if (rows.size() < 2) throw std::runtime_error(what + ": need at least 2 rows");
    const double x0 = rows[0][xcol];
    const double dx = rows[1][xcol] - rows[0][xcol];
    if (!(dx > 0.0)) throw std::runtime_error(what + ": abscissa is not increasing");
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double expected = x0 + static_cast<double>(r) * dx;
        if (std::abs(rows[r][xcol] - expected) > 1e-9 * dx * std::max<double>(1, r)) {
            throw std::runtime_error(what + ": abscissa row " + std::to_string(r) +
                                     " is not on the uniform grid");
        }
        values.push_back(rows[r][ycol]);
    }
    return {x0, dx, std::move(values)};
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// --- polytope interchange ----------------------------------------------------

void write_polytope(std::ostream& os, const LabeledPolytope& P) {
    nlohmann::json j;
    j["n"] = P.dimension();
    j["facets"] = nlohmann::json::array();
    for (const auto& f : P.facets()) {
        j["facets"].push_back({{"eta0", f.eta0}, {"label", f.label}, {"offset", f.offset}});
    }
    os << j.dump(2) << "\n";
}

LabeledPolytope read_polytope(std::istream& is) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("read_polytope: malformed JSON: ") + e.what());
    }
    try {
        const int n = j.at("n").get<int>();
        std::vector<Facet> facets;
        for (const auto& jf : j.at("facets")) {
            Facet f;
            f.eta0 = jf.at("eta0").get<std::vector<std::int64_t>>();
            f.label = jf.at("label").get<int>();
            f.offset = jf.at("offset").get<double>();
            facets.push_back(std::move(f));
        }
        return LabeledPolytope(n, std::move(facets));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("read_polytope: missing or mistyped field: ") +
                                 e.what());
    }
}

// --- CSV writers/readers -------------------------------------------------------

void write_density_csv(std::ostream& os, const DensityGrid& density) {
    os << "# seed = " << density.seed << "\n";
    os << "t,q\n";
    for (std::size_t j = 0; j < density.q.size(); ++j) {
        os << format_double(density.q.x(j)) << "," << format_double(density.q.values[j]) << "\n";
    }
}

DensityGrid read_density_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    const auto rows = numeric_rows(doc, 2, "read_density_csv");
    DensityGrid out;
    out.q = grid_from_columns(rows, 0, 1, "read_density_csv");
    if (const auto it = doc.meta.find("seed"); it != doc.meta.end()) {
        out.seed = static_cast<std::uint64_t>(parse_int(it->second, 0));
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const EquivariantSpectrum& spectrum, int grid,
                        double eps) {
    os << "# alpha = " << format_double(spectrum.alpha) << "\n";
    os << "# h = " << format_double(spectrum.h) << "\n";
    os << "# grid = " << grid << "\n";
    os << "# eps = " << format_double(eps) << "\n";
    os << "index,eigenvalue,multiplicity\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
        os << i << "," << format_double(spectrum.eigenvalues[i]) << ",1\n";
    }
}

SpectrumRecord read_spectrum_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    SpectrumRecord rec;
    rec.spectrum.alpha = meta_double(doc, "alpha");
    rec.spectrum.h = meta_double(doc, "h");
    rec.grid = static_cast<int>(meta_double(doc, "grid"));
    rec.eps = meta_double(doc, "eps");
    const auto rows = numeric_rows(doc, 3, "read_spectrum_csv");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][2] != 1.0) {
            throw std::runtime_error("read_spectrum_csv: row " + std::to_string(r) +
                                     ": only multiplicity 1 is produced by the 1-D solvers");
        }
        rec.spectrum.eigenvalues.push_back(rows[r][1]);
    }
    return rec;
}

void write_min_function_csv(std::ostream& os, const MinFunction& mf) {
    os << "# n = " << mf.n << "\n";
    if (mf.n == 1) {
        os << "alpha1,m\n";
        for (std::size_t i = 0; i < mf.alpha1.size(); ++i) {
            os << format_double(mf.alpha1[i]) << "," << format_double(mf.m[i]) << "\n";
        }
        return;
    }
    os << "alpha1,alpha2,m\n";
    for (std::size_t i = 0; i < mf.alpha1.size(); ++i) {
        for (std::size_t j = 0; j < mf.alpha2.size(); ++j) {
            os << format_double(mf.alpha1[i]) << "," << format_double(mf.alpha2[j]) << ","
               << format_double(mf.m[i * mf.alpha2.size() + j]) << "\n";
        }
    }
}

MinFunction read_min_function_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    MinFunction mf;
    mf.n = static_cast<int>(meta_double(doc, "n"));
    if (mf.n != 1 && mf.n != 2) {
        throw std::runtime_error("read_min_function_csv: n must be 1 or 2");
    }
    const auto rows = numeric_rows(doc, mf.n == 1 ? 2 : 3, "read_min_function_csv");
    if (mf.n == 1) {
        for (const auto& r : rows) {
            mf.alpha1.push_back(r[0]);
            mf.m.push_back(r[1]);
        }
        return mf;
    }
    // Row-major (alpha1 outer, alpha2 cycling fastest): the inner axis is the
    // leading run of strictly increasing alpha2 values, and the outer axis
    // advances once per completed cycle.
    std::size_t n2 = 1;
    while (n2 < rows.size() && rows[n2][1] > rows[n2 - 1][1]) ++n2;
    if (rows.size() % n2 != 0) {
        throw std::runtime_error("read_min_function_csv: " + std::to_string(rows.size()) +
                                 " rows do not tile an inner axis of " + std::to_string(n2));
    }
    for (std::size_t j = 0; j < n2; ++j) mf.alpha2.push_back(rows[j][1]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r % n2 == 0) mf.alpha1.push_back(rows[r][0]);
        if (rows[r][0] != mf.alpha1.back() || rows[r][1] != mf.alpha2[r % n2]) {
            throw std::runtime_error("read_min_function_csv: row " + std::to_string(r) +
                                     " breaks the row-major grid structure");
        }
        mf.m.push_back(rows[r][2]);
    }
    return mf;
}

void write_recovery_csv(std::ostream& os, const RecoveredPotential& rec, const MinFunction& mf) {
    os << "# n = " << rec.n << "\n";
    if (rec.n == 1) {
        os << "s1,V,a1\n";
        for (std::size_t i = 0; i < rec.s1.size(); ++i) {
            const double a1 = mf.alpha1[rec.argmax[i]] * mf.alpha1[rec.argmax[i]];
            os << format_double(rec.s1[i]) << "," << format_double(rec.V[i]) << ","
               << format_double(a1) << "\n";
        }
        return;
    }
    os << "s1,s2,V,a1,a2\n";
    const std::size_t n2 = mf.alpha2.size();
    for (std::size_t i = 0; i < rec.s1.size(); ++i) {
        for (std::size_t j = 0; j < rec.s2.size(); ++j) {
            const std::size_t flat = i * rec.s2.size() + j;
            const std::size_t bi = rec.argmax[flat] / n2;
            const std::size_t bj = rec.argmax[flat] % n2;
            os << format_double(rec.s1[i]) << "," << format_double(rec.s2[j]) << ","
               << format_double(rec.V[flat]) << ","
               << format_double(mf.alpha1[bi] * mf.alpha1[bi]) << ","
               << format_double(mf.alpha2[bj] * mf.alpha2[bj]) << "\n";
        }
    }
}

void write_abel_csv(std::ostream& os, const AbelPair& pair) {
    os << "# c = " << format_double(pair.c) << "\n";
    os << "# alpha = " << format_double(pair.alpha) << "\n";
    os << "t,D\n";
    for (std::size_t j = 0; j < pair.D.size(); ++j) {
        os << format_double(pair.D.x(j)) << "," << format_double(pair.D.values[j]) << "\n";
    }
}

AbelPair read_abel_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    AbelPair pair;
    pair.c = meta_double(doc, "c");
    pair.alpha = meta_double(doc, "alpha");
    const auto rows = numeric_rows(doc, 2, "read_abel_csv");
    pair.D = grid_from_columns(rows, 0, 1, "read_abel_csv");
    return pair;
}

void write_signatures_csv(std::ostream& os, std::span<const FacetSignature> signatures) {
    os << "eta_x,eta_y,lattice_volume\n";
    for (const auto& s : signatures) {
        os << s.normal[0] << "," << s.normal[1] << "," << format_double(s.lattice_volume) << "\n";
    }
}

std::vector<FacetSignature> read_signatures_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    std::vector<FacetSignature> out;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const auto fields = split_fields(doc.rows[r]);
        if (fields.size() != 3) {
            throw std::runtime_error("read_signatures_csv: line " +
                                     std::to_string(doc.row_lines[r]) + ": expected 3 columns");
        }
        FacetSignature s;
        s.normal[0] = parse_int(fields[0], doc.row_lines[r]);
        s.normal[1] = parse_int(fields[1], doc.row_lines[r]);
        s.lattice_volume = parse_double(fields[2], doc.row_lines[r]);
        out.push_back(s);
    }
    if (out.empty()) throw std::runtime_error("read_signatures_csv: no data rows");
    return out;
}

void write_polygon_csv(std::ostream& os, const Polygon& polygon) {
    os << "x,y\n";
    for (const auto& v : polygon.vertices) {
        os << format_double(v[0]) << "," << format_double(v[1]) << "\n";
    }
}

void write_samples_csv(std::ostream& os, std::span<const TraceSample> samples) {
    os << "N,re,im\n";
    for (const auto& s : samples) {
        os << s.N << "," << format_double(s.value.real()) << "," << format_double(s.value.imag())
           << "\n";
    }
}

std::vector<TraceSample> read_samples_csv(std::istream& is) {
    const CsvDocument doc = parse_csv(is);
    std::vector<TraceSample> out;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const auto fields = split_fields(doc.rows[r]);
        if (fields.size() != 3) {
            throw std::runtime_error("read_samples_csv: line " + std::to_string(doc.row_lines[r]) +
                                     ": expected 3 columns");
        }
        TraceSample s;
        s.N = parse_int(fields[0], doc.row_lines[r]);
        s.value = {parse_double(fields[1], doc.row_lines[r]),
                   parse_double(fields[2], doc.row_lines[r])};
        out.push_back(s);
    }
    if (out.empty()) throw std::runtime_error("read_samples_csv: no data rows");
    return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_file: cannot open '" + path + "' for writing");
    writer(os);
    os.flush();
    if (!os) throw std::runtime_error("write_file: failed writing '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("open_input: cannot open '" + path + "'");
    return is;
}

}  // namespace evspec
