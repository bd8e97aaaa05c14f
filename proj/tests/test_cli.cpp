// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file test_cli.cpp
/// @brief End-to-end tests of the command-line tool: exit codes, report
/// contents, manifest embedding, and byte-exact replay.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "covwave_cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

struct CliRun {
    int exit_code = -1;
    std::string output; ///< stdout and stderr, interleaved
};

/// Runs the tool with `args`, capturing combined output.
CliRun cli(const std::string& args, const fs::path& dir) {
    const fs::path capture = dir / "capture.log";
    const std::string command =
        std::string(COVWAVE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CliRun run;
    REQUIRE(WIFEXITED(status));
    run.exit_code = WEXITSTATUS(status);
    run.output = slurp(capture);
    return run;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t line_count(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("cli derive writes reports and replays byte-identically", "[cli]") {
    const fs::path dir = scratch_dir("derive_galilean");

    const CliRun first = cli("derive galilean 2 --out " + (dir / "a").string(), dir);
    INFO(first.output);
    REQUIRE(first.exit_code == 0);
    REQUIRE(contains(first.output, "verdict: schrodinger"));
    REQUIRE(contains(first.output, "derive galilean 2: ok"));

    const json report = json::parse(slurp(dir / "a" / "derive_galilean_2.json"));
    CHECK(report.at("verdict") == "schrodinger");
    CHECK(report.at("ok") == true);
    CHECK(report.at("bindings").at("lam1") == "(1/2*Cbar*v)/(Bbar)");
    CHECK(report.at("multiplier") ==
          "exp[((1/2*i*m*v^2)/(hbar))*x0 + ((i*m*v)/(hbar))*x1]");
    const json& manifest = report.at("manifest");
    CHECK(manifest.at("tool_version") == "0.1.0");
    CHECK(manifest.at("command") == json::array({"derive", "galilean", "2"}));
    CHECK(manifest.at("output_paths").size() == 2);
    CHECK_FALSE(manifest.contains("output_sha256")); // embedded form has no hashes

    const json standalone = json::parse(slurp(dir / "a" / "derive_galilean_2_manifest.json"));
    CHECK(standalone.at("output_sha256").size() == 2);

    SECTION("a second run produces byte-identical files") {
        const CliRun second = cli("derive galilean 2 --out " + (dir / "b").string(), dir);
        REQUIRE(second.exit_code == 0);
        for (const char* name :
             {"derive_galilean_2.json", "derive_galilean_2.txt",
              "derive_galilean_2_manifest.json"})
            CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
    }

    SECTION("replay confirms the recorded hashes") {
        const CliRun replay =
            cli("replay " + (dir / "a" / "derive_galilean_2_manifest.json").string() +
                    " --out " + (dir / "c").string(),
                dir);
        INFO(replay.output);
        REQUIRE(replay.exit_code == 0);
        REQUIRE(contains(replay.output, "byte-identical"));
    }

    SECTION("the text trace ends with the manifest block") {
        const std::string trace = slurp(dir / "a" / "derive_galilean_2.txt");
        CHECK(contains(trace, "verdict: schrodinger"));
        CHECK(contains(trace, "-- run manifest --"));
    }
}

TEST_CASE("cli derive covers lorentz and rotation and rejects bad orders", "[cli]") {
    const fs::path dir = scratch_dir("derive_other");

    SECTION("lorentz order 2 emits both branch reports") {
        const CliRun run = cli("derive lorentz 2 --out " + (dir / "l").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "verdict klein_gordon: klein-gordon"));
        REQUIRE(contains(run.output,
                         "verdict covariant_schrodinger: lorentz-covariant schrodinger"));
        const json report = json::parse(slurp(dir / "l" / "derive_lorentz_2.json"));
        CHECK(report.at("klein_gordon").at("ok") == true);
        CHECK(report.at("covariant_schrodinger").at("ok") == true);
        CHECK(fs::exists(dir / "l" / "derive_lorentz_2_klein_gordon.txt"));
        CHECK(fs::exists(dir / "l" / "derive_lorentz_2_covariant_schrodinger.txt"));
    }

    SECTION("galilean order 3 reports the collapse") {
        const CliRun run = cli("derive galilean 3 --out " + (dir / "g3").string(), dir);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "verdict: collapses to order 2"));
    }

    SECTION("rotation order 2 lists the surviving coefficients") {
        const CliRun run = cli("derive rotation 2 --out " + (dir / "r").string(), dir);
        REQUIRE(run.exit_code == 0);
        const json report = json::parse(slurp(dir / "r" / "derive_rotation_2.json"));
        CHECK(report.at("consistent") == true);
        CHECK(report.at("free_coefficients").size() == 3);
        CHECK(report.at("rank").get<int>() > 0);
    }

    SECTION("unsupported combinations exit with the usage code") {
        CHECK(cli("derive lorentz 3 --out " + (dir / "x").string(), dir).exit_code == 2);
        CHECK(cli("derive conformal 2 --out " + (dir / "x").string(), dir).exit_code == 2);
        CHECK(cli("derive galilean 5 --out " + (dir / "x").string(), dir).exit_code == 2);
        CHECK(cli("", dir).exit_code == 2); // missing subcommand
    }
}

TEST_CASE("cli verify dispersion honors the config grammar", "[cli]") {
    const fs::path dir = scratch_dir("verify_dispersion");

    SECTION("defaults sweep all three equations") {
        const CliRun run = cli("verify dispersion --out " + (dir / "d").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "verify dispersion: 25 passed, 0 failed"));
        const std::string csv = slurp(dir / "d" / "verify_dispersion.csv");
        CHECK(csv.rfind("# manifest ", 0) == 0);
        CHECK(contains(csv, "equation,branch,k,omega_measured,omega_analytic,error"));
        CHECK(line_count(csv) == 27); // manifest + header + 25 rows
        const json report = json::parse(slurp(dir / "d" / "verify_dispersion_report.json"));
        CHECK(report.at("passed") == true);
        CHECK(report.at("rows").size() == 25);
    }

    SECTION("an explicit sweep restricted to one equation") {
        spit(dir / "sweep.cfg", "# first-order sweep\n"
                                "equation = schrodinger\n"
                                "k_list = 1 2 4 8\n"
                                "tolerance = 1e-8\n");
        const CliRun run = cli("verify dispersion " + (dir / "sweep.cfg").string() +
                                   " --out " + (dir / "s").string(),
                               dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        const json report = json::parse(slurp(dir / "s" / "verify_dispersion_report.json"));
        REQUIRE(report.at("rows").size() == 4);
        for (const json& row : report.at("rows")) CHECK(row.at("pass") == true);
        const json& manifest = report.at("manifest");
        CHECK(manifest.at("input_hashes").contains("config"));
        CHECK(contains(manifest.at("parameters").at("config").get<std::string>(),
                       "k_list = 1 2 4 8"));
    }

    SECTION("unknown keys are rejected with their line number") {
        spit(dir / "bad.cfg", "# comment\nplanck = 6.626e-34\n");
        const CliRun run = cli("verify dispersion " + (dir / "bad.cfg").string(), dir);
        CHECK(run.exit_code == 2);
        CHECK(contains(run.output, "line 2"));
        CHECK(contains(run.output, "unknown key 'planck'"));
    }

    SECTION("malformed lines are rejected with their line number") {
        spit(dir / "mal.cfg", "# comment\n\nno equals sign here\n");
        const CliRun run = cli("verify dispersion " + (dir / "mal.cfg").string(), dir);
        CHECK(run.exit_code == 2);
        CHECK(contains(run.output, "line 3"));
    }

    SECTION("off-lattice wave numbers are a config error") {
        spit(dir / "off.cfg", "k_list = 0.03\n");
        const CliRun run = cli("verify dispersion " + (dir / "off.cfg").string(), dir);
        CHECK(run.exit_code == 2);
        CHECK(contains(run.output, "lattice"));
    }

    SECTION("a missing config file is a usage error") {
        CHECK(cli("verify dispersion " + (dir / "absent.cfg").string(), dir).exit_code ==
              2);
    }
}

TEST_CASE("cli verify boost obeys the tolerance override contract", "[cli]") {
    const fs::path dir = scratch_dir("verify_boost");

    SECTION("galilean defaults pass") {
        const CliRun run = cli("verify boost --out " + (dir / "g").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "PASS max_residual"));
        REQUIRE(contains(run.output, "PASS l2_discrepancy"));
    }

    SECTION("the lorentz scenario reads the plane wave") {
        spit(dir / "lor.cfg", "scenario = lorentz\nbeta = 0.3\nc = 10\n");
        const CliRun run = cli("verify boost " + (dir / "lor.cfg").string() + " --out " +
                                   (dir / "l").string(),
                               dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "verify boost: 4 passed, 0 failed"));
        REQUIRE(contains(run.output, "PASS omega_error"));
        REQUIRE(contains(run.output, "PASS k_error"));
    }

    SECTION("an impossible tolerance fails with the failing row named") {
        const CliRun run =
            cli("verify boost --tolerance 1e-20 --out " + (dir / "t").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 1);
        REQUIRE(contains(run.output, "FAIL max_residual"));
        const json report = json::parse(slurp(dir / "t" / "verify_boost_report.json"));
        CHECK(report.at("passed") == false);
        CHECK(report.at("manifest").at("parameters").at("tolerance_override")
                  .get<double>() == 1e-20);
    }

    SECTION("a lorentz scenario with a potential is a config error") {
        spit(dir / "v.cfg", "scenario = lorentz\nV = 0.5\n");
        const CliRun run = cli("verify boost " + (dir / "v.cfg").string(), dir);
        CHECK(run.exit_code == 2);
        CHECK(contains(run.output, "V = 0"));
    }
}

TEST_CASE("cli verify nr-limit and squared-op run headless at defaults", "[cli]") {
    const fs::path dir = scratch_dir("verify_rest");

    SECTION("nr-limit fits the expected slope") {
        const CliRun run = cli("verify nr-limit --out " + (dir / "n").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "PASS slope"));
        const std::string csv = slurp(dir / "n" / "verify_nr_limit.csv");
        CHECK(contains(csv, "c,l2_error"));
        CHECK(line_count(csv) == 6); // manifest + header + 4 rows
    }

    SECTION("squared-op reports residual and mismatch rows") {
        const CliRun run = cli("verify squared-op --out " + (dir / "s").string(), dir);
        INFO(run.output);
        REQUIRE(run.exit_code == 0);
        REQUIRE(contains(run.output, "verify squared-op: 7 passed, 0 failed"));
        REQUIRE(contains(run.output, "PASS mismatch_error"));
        REQUIRE(contains(run.output, "PASS mismatch_scale"));
    }

    SECTION("a decreasing c_list is a config error") {
        spit(dir / "dec.cfg", "c_list = 40 20 10\n");
        const CliRun run = cli("verify nr-limit " + (dir / "dec.cfg").string(), dir);
        CHECK(run.exit_code == 2);
        CHECK(contains(run.output, "strictly increasing"));
    }
}

TEST_CASE("cli simulate dumps evolutions and replay detects tampering", "[cli]") {
    const fs::path dir = scratch_dir("simulate");

    const CliRun run = cli("simulate schrodinger --out " + (dir / "a").string(), dir);
    INFO(run.output);
    REQUIRE(run.exit_code == 0);
    const std::string csv = slurp(dir / "a" / "simulate_schrodinger.csv");
    CHECK(csv.rfind("# manifest ", 0) == 0);
    CHECK(contains(csv, "x,re_initial,im_initial,re_final,im_final"));
    CHECK(line_count(csv) == 1026); // manifest + header + 1024 samples

    SECTION("replay of the recorded manifest reproduces the dump") {
        const CliRun replay =
            cli("replay " + (dir / "a" / "simulate_schrodinger_manifest.json").string() +
                    " --out " + (dir / "b").string(),
                dir);
        INFO(replay.output);
        REQUIRE(replay.exit_code == 0);
        REQUIRE(contains(replay.output, "byte-identical"));
        CHECK(slurp(dir / "a" / "simulate_schrodinger.csv") ==
              slurp(dir / "b" / "simulate_schrodinger.csv"));
    }

    SECTION("a tampered output hash makes replay fail") {
        json manifest =
            json::parse(slurp(dir / "a" / "simulate_schrodinger_manifest.json"));
        manifest["output_sha256"]["simulate_schrodinger.csv"] = std::string(64, '0');
        spit(dir / "tampered.json", manifest.dump(2) + "\n");
        const CliRun replay = cli("replay " + (dir / "tampered.json").string() +
                                      " --out " + (dir / "c").string(),
                                  dir);
        INFO(replay.output);
        REQUIRE(replay.exit_code == 1);
        REQUIRE(contains(replay.output, "MISMATCH"));
    }

    SECTION("replay of a file that is not a manifest is a usage error") {
        const CliRun replay =
            cli("replay " + (dir / "a" / "simulate_schrodinger.csv").string(), dir);
        CHECK(replay.exit_code == 2);
    }

    SECTION("a second-order branch dump stays finite and norm-conserving") {
        spit(dir / "lcse.cfg", "branch = antiparticle\nt_final = 0.25\n");
        const CliRun second = cli("simulate lcse " + (dir / "lcse.cfg").string() +
                                      " --out " + (dir / "d").string(),
                                  dir);
        INFO(second.output);
        REQUIRE(second.exit_code == 0);
        REQUIRE(contains(second.output, "simulate lcse: ok"));
        // phase-only evolution conserves the norm to round-off
        REQUIRE((contains(second.output, "norm final = 1") ||
                 contains(second.output, "norm final = 0.99999999999999")));
    }
}
