#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionmod/catalog.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string cli_path() { return FUSIONMOD_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("classify against fixtures exits cleanly") {
    const fs::path out = fresh_dir("fusionmod-cli-classify");
    CHECK(run("classify --builtin s4 --max-rank 2 --expect-fixtures --out " + out.string()) == 0);
    CHECK(fs::exists(out / "classification.json"));
    CHECK(fs::exists(out / "classification.md"));
    const std::string md = slurp(out / "classification.md");
    CHECK(md.find("Rank 2 (3 modules)") != std::string::npos);
    CHECK(md.find("M_2_2") != std::string::npos);
}

TEST_CASE("classify with a missing plan file is a usage error") {
    const std::string root = fusionmod::default_catalog_root();
    CHECK(run("classify --ring " + root + "/data/rings/s4.toml --plan " + root +
              "/data/plans/missing.toml") == 2);
}

TEST_CASE("missing subcommand or bad flags are usage errors") {
    CHECK(run("") == 2);
    CHECK(run("classify --max-rank 0") == 2);
    CHECK(run("check --only bogus") == 2);
}

TEST_CASE("categorify --check-paper passes on the pristine catalog") {
    const fs::path out = fresh_dir("fusionmod-cli-categorify");
    CHECK(run("categorify --builtin s4 --check-paper --out " + out.string()) == 0);
    const std::string md = slurp(out / "categorification.md");
    CHECK(md.find("Rep(A4,alpha)") != std::string::npos);
    CHECK(md.find("M_3_1") != std::string::npos);
    CHECK(md.find("match the published column exactly") != std::string::npos);
}

TEST_CASE("check suites") {
    CHECK(run("check") == 0);
    CHECK(run("check --only cocycle") == 0);
    CHECK(run("check --only orthogonality") == 0);
}

TEST_CASE("reports are byte-identical across runs") {
    const fs::path out1 = fresh_dir("fusionmod-cli-det1");
    const fs::path out2 = fresh_dir("fusionmod-cli-det2");
    const std::string flags = "classify --builtin s4 --max-rank 3 --trace --expect-fixtures --out ";
    REQUIRE(run(flags + out1.string()) == 0);
    REQUIRE(run(flags + out2.string()) == 0);
    CHECK(slurp(out1 / "classification.json") == slurp(out2 / "classification.json"));
    CHECK(slurp(out1 / "classification.md") == slurp(out2 / "classification.md"));

    const fs::path cat1 = fresh_dir("fusionmod-cli-det3");
    const fs::path cat2 = fresh_dir("fusionmod-cli-det4");
    REQUIRE(run("categorify --check-paper --out " + cat1.string()) == 0);
    REQUIRE(run("categorify --check-paper --out " + cat2.string()) == 0);
    CHECK(slurp(cat1 / "categorification.json") == slurp(cat2 / "categorification.json"));
}

TEST_CASE("a corrupted data tree makes check fail with exit 1") {
    const fs::path dir = fresh_dir("fusionmod-cli-tampered");
    const fs::path src(fusionmod::default_catalog_root());
    fs::copy(src / "data", dir / "data", fs::copy_options::recursive);
    fs::copy(src / "fixtures", dir / "fixtures", fs::copy_options::recursive);
    // Flip one character value.
    const fs::path table = dir / "data" / "tables" / "z2.toml";
    std::string text = slurp(table);
    const auto pos = text.find("[\"1\", \"-1\"]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "[\"1\", \"1\"]");
    std::ofstream(table.string()) << text;

    const std::string cmd = "FUSIONMOD_DATA=" + dir.string() + " " + cli_path() +
                            " check > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
}
