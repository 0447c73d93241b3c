#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdjc/config.hpp"
#include "fdjc/errors.hpp"
#include "fdjc/output.hpp"
#include "fdjc/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fdjc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("fdjc_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Reduced-resolution preset overrides keep the oracle runs affordable.
const char* kSmallOverrides =
    "p_nodes = 6\n"
    "t_points = 201\n";

} // namespace

TEST_CASE("preset registry") {
    auto names = preset_names();
    REQUIRE(names.size() == 15);
    CHECK(names.front() == "fig1a");
    CHECK(names.back() == "fig5c");
    for (const auto& name : names) {
        ModelParams mp = preset(name);
        CHECK_NOTHROW(mp.validate());
        CHECK(std::abs(std::norm(mp.c_e) + std::norm(mp.c_g) - 1.0) < 1e-12);
        CHECK(mp.spec.kind == DeformationKind::QType);
        CHECK(mp.spec.q == 1.04);
        CHECK(mp.weights.alpha == 2.0);
        CHECK(mp.p_nodes == 32);
        CHECK(mp.t_grid.size() == 2001);
        CHECK(mp.lambda_c * mp.t_grid.back() == doctest::Approx(25.0).epsilon(1e-12));
        // chirp magnitudes follow the figure panels
        double want = name[4] == 'a' ? 0.0 : name[4] == 'b' ? 2e7 : 8e7;
        CHECK(std::abs(mp.kg) == want);
    }
    CHECK(preset_default_output("fig1b") == "W");
    CHECK(preset_default_output("fig2a") == "Fy");
    CHECK(preset_default_output("fig3c") == "dp");
    CHECK(preset_default_output("fig4a") == "g2");
    CHECK(preset_default_output("fig5c") == "S2");
    CHECK_THROWS_AS(preset("fig6a"), ConfigError);
}

TEST_CASE("config parsing and validation") {
    fs::path dir = temp_dir("cfg");

    // empty file + preset gives the full parameter set
    write_file(dir / "a.cfg", "preset = fig1a\n");
    RunConfig cfg = load_config((dir / "a.cfg").string());
    ResolvedRun run = resolve(cfg);
    CHECK(run.params.kg == 0.0);
    CHECK(run.outputs == std::vector<std::string>{"W"});

    // override semantics
    write_file(dir / "b.cfg", "preset = fig1a\nlambda_c = 2e5\noutputs = W,S1,S2\n");
    ResolvedRun run2 = resolve(load_config((dir / "b.cfg").string()));
    CHECK(run2.params.lambda_c == 2e5);
    CHECK(run2.outputs.size() == 3);

    // unknown key names the nearest valid one
    write_file(dir / "c.cfg", "preset = fig1a\nlamda = 1\n");
    try {
        load_config((dir / "c.cfg").string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::UnknownKey);
        CHECK(std::string(e.what()).find("lambda_c") != std::string::npos);
    }

    // missing keys without a preset
    write_file(dir / "d.cfg", "lambda_c = 1e4\n");
    try {
        resolve(load_config((dir / "d.cfg").string()));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::MissingKey);
    }

    // structural parse diagnostics carry the line number
    write_file(dir / "e.cfg", "preset = fig1a\nkg 3\n");
    try {
        load_config((dir / "e.cfg").string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::Parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    // bad numbers are diagnosed with the key name at resolve time
    write_file(dir / "e2.cfg", "preset = fig1a\nkg = 3x\n");
    try {
        resolve(load_config((dir / "e2.cfg").string()));
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.kind == ConfigError::Kind::Parse);
        CHECK(std::string(e.what()).find("kg") != std::string::npos);
    }

    write_file(dir / "f.cfg", "preset = fig9z\n");
    CHECK_THROWS_AS(resolve(load_config((dir / "f.cfg").string())), ConfigError);

    write_file(dir / "g.cfg", "preset = fig1a\noutputs = W,bogus\n");
    CHECK_THROWS_AS(resolve(load_config((dir / "g.cfg").string())), ConfigError);
}

TEST_CASE("run emits deterministic files and a loadable manifest") {
    fs::path dir = temp_dir("run");
    write_file(dir / "run.cfg", std::string("preset = fig1b\noutputs = W,S2\n") + kSmallOverrides);
    RunConfig cfg = load_config((dir / "run.cfg").string());

    ResolvedRun rr = resolve(cfg);
    run(rr, (dir / "out1").string(), 1);
    run(rr, (dir / "out2").string(), 2); // different thread count

    for (const char* f : {"W.csv", "S2.csv", "W.svg", "S2.svg", "manifest.cfg"})
        CHECK(fs::exists(dir / "out1" / f));

    CHECK(slurp(dir / "out1" / "W.csv") == slurp(dir / "out2" / "W.csv"));
    CHECK(slurp(dir / "out1" / "S2.csv") == slurp(dir / "out2" / "S2.csv"));

    // CSV shape: header + one row per grid point, 17 significant digits
    std::string csv = slurp(dir / "out1" / "W.csv");
    CHECK(csv.rfind("scaled_t,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 202);
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.find("e+00") != std::string::npos);

    // round-trip: loading the manifest reproduces byte-identical CSVs
    RunConfig back = load_config((dir / "out1" / "manifest.cfg").string());
    CHECK_FALSE(back.preset.has_value());
    ResolvedRun rr2 = resolve(back);
    run(rr2, (dir / "out3").string(), 2);
    CHECK(slurp(dir / "out1" / "W.csv") == slurp(dir / "out3" / "W.csv"));
    CHECK(slurp(dir / "out1" / "S2.csv") == slurp(dir / "out3" / "S2.csv"));
}

TEST_CASE("mode=both reports the closed-form vs oracle deviation") {
    fs::path dir = temp_dir("both");
    write_file(dir / "run.cfg",
               std::string("preset = fig1b\nmode = both\noutputs = W\n") + kSmallOverrides);
    ResolvedRun rr = resolve(load_config((dir / "run.cfg").string()));
    run(rr, (dir / "out").string(), 2);

    std::string csv = slurp(dir / "out" / "W.csv");
    REQUIRE(csv.rfind("scaled_t,value,value_oracle,abs_diff\n", 0) == 0);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line); // header
    double max_diff = 0.0;
    while (std::getline(ss, line)) {
        size_t pos = line.rfind(',');
        max_diff = std::max(max_diff, std::stod(line.substr(pos + 1)));
    }
    CHECK(max_diff <= 1e-6);
}

TEST_CASE("sweep creates one directory per value") {
    fs::path dir = temp_dir("sweep");
    write_file(dir / "sweep.cfg", std::string("preset = fig1a\noutputs = W\n") + kSmallOverrides +
                                      "sweep_key = kg\n"
                                      "sweep_values = 0,-2e7,-8e7\n");
    RunConfig cfg = load_config((dir / "sweep.cfg").string());
    run_sweep(cfg, (dir / "out").string(), 2);
    CHECK(fs::exists(dir / "out" / "kg=0" / "W.csv"));
    CHECK(fs::exists(dir / "out" / "kg=-2e7" / "W.csv"));
    CHECK(fs::exists(dir / "out" / "kg=-8e7" / "W.csv"));
}

#ifdef FDJC_BIN
TEST_CASE("cli exit codes") {
    fs::path dir = temp_dir("cli");
    std::string bin = FDJC_BIN;
    auto exit_code = [](const std::string& cmd) {
        int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };
    CHECK(exit_code(bin + " preset-list > /dev/null") == 0);
    CHECK(exit_code(bin + " verify --dim 12 > /dev/null") == 0);
    CHECK(exit_code(bin + " run --preset fig9x --out " + (dir / "x").string() +
                    " 2> /dev/null") == 2);
    write_file(dir / "bad.cfg", "lamda = 1\n");
    CHECK(exit_code(bin + " run --config " + (dir / "bad.cfg").string() + " --out " +
                    (dir / "y").string() + " 2> /dev/null") == 2);
    write_file(dir / "ok.cfg", std::string("preset = fig1a\noutputs = W\n") + kSmallOverrides);
    CHECK(exit_code(bin + " run --config " + (dir / "ok.cfg").string() + " --out " +
                    (dir / "z").string() + " > /dev/null") == 0);
    CHECK(fs::exists(dir / "z" / "W.csv"));
}
#endif
