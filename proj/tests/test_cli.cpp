#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("BLOWUPLAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    const std::string cmd = bin() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("blowuplab_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("profile subcommand emits the documented CSV") {
    TempDir d;
    const int rc = run("profile --alpha 3 --beta inf --samples 201 --out " + d.path.string());
    CHECK(rc == 0);
    const auto csv = slurp(d.path / "profile.csv");
    CHECK(count_lines(csv) == 202);  // header + 201 rows
    CHECK(csv.rfind("y,tildeU,dtildeU,H", 0) == 0);
    CHECK(fs::exists(d.path / "profile_config.json"));
}

TEST_CASE("profile rejects invalid alpha with exit 1") {
    TempDir d;
    CHECK(run("profile --alpha -1 --out " + d.path.string()) == 1);
    // no partial artifacts
    CHECK(!fs::exists(d.path / "profile.csv"));
}

TEST_CASE("scan-modes emits one row per lattice point, no smooth points off 0/1") {
    TempDir d;
    const int rc = run("scan-modes --alpha 3 --re -0.9:3 --im -3:3 --grid 20x20 --nmax 500 --out " +
                       d.path.string());
    CHECK(rc == 0);
    const auto csv = slurp(d.path / "scan.csv");
    CHECK(count_lines(csv) == 401);
    // smooth column is the third field; all rows should be 0
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        const auto p1 = line.find(',');
        const auto p2 = line.find(',', p1 + 1);
        CHECK(line[p2 + 1] == '0');
    }
}

TEST_CASE("determinism: identical invocations give byte-identical artifacts") {
    TempDir d1, d2;
    CHECK(run("profile --alpha 3 --beta 0.25 --samples 33 --out " + d1.path.string()) == 0);
    CHECK(run("profile --alpha 3 --beta 0.25 --samples 33 --out " + d2.path.string()) == 0);
    CHECK(slurp(d1.path / "profile.csv") == slurp(d2.path / "profile.csv"));
    CHECK(slurp(d1.path / "profile_config.json") == slurp(d2.path / "profile_config.json"));
}

TEST_CASE("BLOWUPLAB_OUT overrides --out") {
    TempDir d;
    const std::string cmd = "BLOWUPLAB_OUT=" + d.path.string() + " " + bin() +
                            " profile --alpha 3 --samples 11 --out /nonexistent >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(fs::exists(d.path / "profile.csv"));
}

TEST_CASE("spectrum subcommand writes the JSON report") {
    TempDir d;
    CHECK(run("spectrum --alpha 3 --N 32 --out " + d.path.string()) == 0);
    const auto js = slurp(d.path / "spectrum.json");
    CHECK(js.find("\"eigenvalues\"") != std::string::npos);
    CHECK(js.find("mode_one") != std::string::npos);
}

TEST_CASE("unknown flags exit 1") { CHECK(run("profile --frobnicate 3") == 1); }
