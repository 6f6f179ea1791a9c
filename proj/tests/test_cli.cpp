#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

std::string cli_path() {
    const char* p = std::getenv("QWELL_CLI");
    return p ? p : "";
}

// the ctest entry always sets QWELL_CLI; direct binary runs without it skip
#define REQUIRE_CLI()                                        \
    if (cli_path().empty()) {                                \
        MESSAGE("QWELL_CLI not set; skipping CLI contract"); \
        return;                                              \
    }

RunResult run(const std::string& args) {
    const std::string cmd = "\"" + cli_path() + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    const fs::path dir =
        fs::temp_directory_path() / ("qwell_cli_test_" + std::to_string(getpid()));
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bounds: table carries the cap and both labeled constants") {
    REQUIRE_CLI();
    const RunResult r = run("bounds --dx 5 --mass 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("17.4%") != std::string::npos);
    CHECK(r.output.find("published") != std::string::npos);
    CHECK(r.output.find("recomputed") != std::string::npos);
    CHECK(r.output.find("1.28232799") != std::string::npos);
    CHECK(r.output.find("0.435426286") != std::string::npos);
}

TEST_CASE("bounds: json values and the 1/dx^2 law") {
    REQUIRE_CLI();
    const RunResult r5 = run("bounds --dx 5 --mass 1 --format json");
    const RunResult r10 = run("bounds --dx 10 --mass 1 --format json");
    REQUIRE(r5.exit_code == 0);
    REQUIRE(r10.exit_code == 0);
    const auto j5 = nlohmann::json::parse(r5.output);
    const auto j10 = nlohmann::json::parse(r10.output);
    CHECK(std::abs(j5["e_bound_published_meV"].get<double>() - 1.28234) <
          1e-4);
    CHECK(std::abs(j5["e_bound_recomputed_meV"].get<double>() - 0.43543) <
          1e-4);
    CHECK(j10["e_bound_published_meV"].get<double>() * 4.0 ==
          j5["e_bound_published_meV"].get<double>());
    CHECK(j10["e_bound_recomputed_meV"].get<double>() * 4.0 ==
          j5["e_bound_recomputed_meV"].get<double>());
    CHECK(std::abs(j5["p_max"].get<double>() - 0.174165739) < 1e-9);
}

TEST_CASE("bounds: invalid width exits 1") {
    REQUIRE_CLI();
    CHECK(run("bounds --dx 0 --mass 1").exit_code == 1);
    CHECK(run("bounds --dx 5 --mass -2").exit_code == 1);
}

TEST_CASE("solve: strength-1 well via both backends") {
    REQUIRE_CLI();
    const fs::path dir = scratch_dir();
    const fs::path well = write_file(
        dir / "v1.json",
        R"({"dx_nm": 1.0, "segments": [{"width_nm": 1.0, "value_eV": -0.0380998}]})");

    const RunResult tm =
        run("solve --potential " + well.string() + " --mass 1 --format json");
    REQUIRE(tm.exit_code == 0);
    const auto jtm = nlohmann::json::parse(tm.output);
    REQUIRE(jtm["states"].size() == 1);
    CHECK(std::abs(jtm["states"][0]["z"].get<double>() - 0.43513086) < 1e-6);

    const RunResult fd = run("solve --potential " + well.string() +
                             " --mass 1 --backend fd --format json");
    REQUIRE(fd.exit_code == 0);
    const auto jfd = nlohmann::json::parse(fd.output);
    REQUIRE(jfd["states"].size() == 1);
    CHECK(std::abs(jfd["states"][0]["z"].get<double>() - 0.43513086) < 1e-4);
}

TEST_CASE("solve: no bound states exits 2") {
    REQUIRE_CLI();
    const fs::path dir = scratch_dir();
    const fs::path zero = write_file(
        dir / "zero.json",
        R"({"dx_nm": 5.0, "segments": [{"width_nm": 5.0, "value_eV": 0.0}]})");
    const RunResult r = run("solve --potential " + zero.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("no bound states") != std::string::npos);
}

TEST_CASE("solve: malformed file exits 1 naming the offender") {
    REQUIRE_CLI();
    const fs::path dir = scratch_dir();
    const fs::path bad = write_file(
        dir / "bad.json",
        R"({"dx_nm": 5.0, "segments": [{"width_nm": 5.0, "voltage": -1}]})");
    const RunResult r = run("solve --potential " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("voltage") != std::string::npos);

    CHECK(run("solve --potential " + (dir / "missing.json").string())
              .exit_code == 1);
}

TEST_CASE("validate: default sweep summary and deterministic CSV") {
    REQUIRE_CLI();
    const fs::path dir = scratch_dir();
    const fs::path out1 = dir / "sweep1.csv";
    const fs::path out2 = dir / "sweep2.csv";
    const std::string args =
        "validate --family square-well --dx 5 --depth-range 1e-4:1:log:20 "
        "--mass 1 --out ";

    const RunResult r1 = run(args + out1.string());
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.output.find("records: 20") != std::string::npos);
    CHECK(r1.output.find("validity boundary") != std::string::npos);
    CHECK(r1.output.find("0.769639") != std::string::npos);

    const RunResult r2 = run(args + out2.string());
    REQUIRE(r2.exit_code == 0);
    const std::string csv1 = slurp(out1);
    CHECK(csv1 == slurp(out2));

    std::istringstream in(csv1);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("family,depth_eV,", 0) == 0);
    CHECK(std::count(header.begin(), header.end(), ',') == 14);
}

TEST_CASE("validate: shallow-only sweep reports no boundary") {
    REQUIRE_CLI();
    const fs::path dir = scratch_dir();
    const fs::path out = dir / "shallow.csv";
    const RunResult r =
        run("validate --dx 5 --depth-range 1e-5:1e-4:log:4 --out " +
            out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("outside sweep") != std::string::npos);
}

TEST_CASE("validate: unwritable output exits 1") {
    REQUIRE_CLI();
    const RunResult r =
        run("validate --dx 5 --depth-range 1e-4:1e-3:log:2 --out "
            "/nonexistent-dir/x.csv");
    CHECK(r.exit_code == 1);
}

TEST_SUITE_END();
