/** \file test_cli.cpp
 *  \brief End-to-end checks of the evspec binary: exit codes, golden output,
 *         byte-determinism, config-file precedence, and the run manifest.
 *
 *  EVSPEC_CLI_PATH is injected by the build and points at the built binary;
 *  every run works inside its own scratch directory under the system temp
 *  directory.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#ifndef EVSPEC_CLI_PATH
#error "EVSPEC_CLI_PATH must be defined to the path of the evspec binary"
#endif

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string output;  // stdout and stderr combined
};

/// Fresh scratch directory for one test case.
fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("evspec_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_text(const fs::path& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

/// Data rows of a CSV: lines that are neither metadata nor the header row.
int data_row_count(const std::string& csv) {
    std::stringstream ss(csv);
    std::string line;
    int rows = 0;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "run.log";
    const std::string cmd =
        std::string("\"") + EVSPEC_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = read_text(log);
    return r;
}

nlohmann::json manifest_of(const fs::path& out_dir) {
    return nlohmann::json::parse(read_text(out_dir / "manifest.json"));
}

}  // namespace

TEST_CASE("help and version are ordinary successes") {
    const auto dir = scratch("help");
    const auto help = run_cli("--help", dir);
    CHECK(help.code == 0);
    CHECK(help.output.find("Exit codes") != std::string::npos);

    const auto version = run_cli("--version", dir);
    CHECK(version.code == 0);
    CHECK(first_line(version.output) == "0.1.0");

    CHECK(run_cli("spectrum --help", dir).code == 0);
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit with code 2") {
    const auto dir = scratch("usage");
    CHECK(run_cli("", dir).code == 2);                        // a subcommand is required
    CHECK(run_cli("spectrum --no-such-flag", dir).code == 2); // unknown option
    const auto sweep = run_cli("measure --h-list 1/50,1/100", dir);
    CHECK(sweep.code == 2);
    CHECK(sweep.output.find("at least 3") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("failure classes map to their documented exit codes") {
    const auto dir = scratch("codes");
    const std::string out = " --out \"" + (dir / "o").string() + "\"";

    const auto fixture = run_cli("spectrum --fixture flat-torus" + out, dir);
    CHECK(fixture.code == 3);
    CHECK(fixture.output.find("unknown fixture") != std::string::npos);

    CHECK(run_cli("spectrum --h 0.3" + out, dir).code == 4);       // 1/h not integral
    CHECK(run_cli("spectrum --alpha 0.015" + out, dir).code == 4); // alpha/h not integral

    const auto missing = run_cli("invert-schrodinger --min-csv /no/such/file.csv" + out, dir);
    CHECK(missing.code == 5);
    CHECK(missing.output.find("/no/such/file.csv") != std::string::npos);

    // Truncation radius far too small for the oscillator: the solver throws.
    const auto solver = run_cli("spectrum --fixture oscillator --R 1.5" + out, dir);
    CHECK(solver.code == 1);
    CHECK(solver.output.find("truncation") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("counting function matches the phase-space prediction") {
    const auto dir = scratch("weyl");
    const auto r = run_cli("verify-weyl --out \"" + (dir / "o").string() + "\"", dir);
    REQUIRE(r.code == 0);
    CHECK(first_line(r.output) == "count=100 prediction=100.0");

    const auto m = manifest_of(dir / "o");
    CHECK(m["subcommand"] == "verify-weyl");
    CHECK(m["results"]["count"] == 100);
    CHECK(read_text(dir / "o" / "weyl.csv").rfind("# seed = 20260814\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("identical parameters give byte-identical CSV output") {
    const auto dir = scratch("determinism");
    const std::string args = "spectrum --fixture round-sphere --h 1/50 --count 8 --seed 9";
    REQUIRE(run_cli(args + " --out \"" + (dir / "a").string() + "\"", dir).code == 0);
    REQUIRE(run_cli(args + " --out \"" + (dir / "b").string() + "\"", dir).code == 0);

    const auto a = read_text(dir / "a" / "spectrum.csv");
    CHECK(a == read_text(dir / "b" / "spectrum.csv"));
    CHECK(a.rfind("# seed = 9\n", 0) == 0);
    CHECK(data_row_count(a) == 8);
    fs::remove_all(dir);
}

TEST_CASE("config file fills in defaults and command-line flags win") {
    const auto dir = scratch("config");
    {
        std::ofstream cfg(dir / "cfg.toml");
        cfg << "seed = 777\n\n[spectrum]\ncount = 3\nfixture = \"oscillator\"\nh = \"1/50\"\n";
    }
    const std::string base = "--config \"" + (dir / "cfg.toml").string() + "\"";

    const auto a = run_cli(base + " --out \"" + (dir / "a").string() + "\" spectrum", dir);
    REQUIRE(a.code == 0);
    CHECK(first_line(a.output) == "fixture=oscillator k=50 h=1/50 count=3");
    const auto csv_a = read_text(dir / "a" / "spectrum.csv");
    CHECK(csv_a.rfind("# seed = 777\n", 0) == 0);
    CHECK(data_row_count(csv_a) == 3);

    const auto b = run_cli(
        base + " --out \"" + (dir / "b").string() + "\" --seed 5 spectrum --count 2", dir);
    REQUIRE(b.code == 0);
    const auto csv_b = read_text(dir / "b" / "spectrum.csv");
    CHECK(csv_b.rfind("# seed = 5\n", 0) == 0);
    CHECK(data_row_count(csv_b) == 2);
    fs::remove_all(dir);
}

TEST_CASE("manifest.json records inputs, outputs and results") {
    const auto dir = scratch("manifest");
    const auto r = run_cli(
        "--seed 42 --out \"" + (dir / "o").string() + "\" reconstruct-polytope --exact", dir);
    REQUIRE(r.code == 0);

    const auto m = manifest_of(dir / "o");
    CHECK(m["subcommand"] == "reconstruct-polytope");
    CHECK(m["seed"] == 42);
    CHECK(m["versions"]["evspec"] == "0.1.0");
    CHECK(m["inputs"]["fixture"] == "simplex");
    CHECK(m["results"]["area"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m["results"]["vertex_distance"].get<double>() <= 1e-9);
    const auto& files = m["files"];
    CHECK(std::find(files.begin(), files.end(), "signatures.csv") != files.end());
    CHECK(read_text(dir / "o" / "signatures.csv").rfind("# seed = 42\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("weight recovery round-trips its own synthesis") {
    const auto dir = scratch("wps");
    const auto r = run_cli("wps-recover --out \"" + (dir / "o").string() + "\"", dir);
    REQUIRE(r.code == 0);
    CHECK(r.output.find("recovered weights {2,3,5} with realness period N0=30") !=
          std::string::npos);

    const auto m = manifest_of(dir / "o");
    CHECK(m["results"]["failures"] == 0);
    CHECK(m["results"]["trials"][0]["recovered"] == nlohmann::json({2, 3, 5}));
    CHECK(m["results"]["trials"][0]["realness_period"] == 30);
    CHECK(fs::exists(dir / "o" / "samples.csv"));
    fs::remove_all(dir);
}
