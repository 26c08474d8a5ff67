#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "fusionmod/tomlite.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <set>

using namespace fusionmod;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path copy_catalog(const std::string& name) {
    const fs::path dir = make_temp_dir(name);
    const fs::path src(default_catalog_root());
    fs::copy(src / "data", dir / "data", fs::copy_options::recursive);
    fs::copy(src / "fixtures", dir / "fixtures", fs::copy_options::recursive);
    return dir;
}

}  // namespace

TEST_CASE("toml subset reader") {
    const auto j = parse_toml(
        "# comment\n"
        "name = \"x\"\n"
        "count = -3\n"
        "flag = true\n"
        "list = [1, 2,\n  3]  # trailing\n"
        "pairs = [[\"a\", { \"k\" = 1 }]]\n"
        "[section]\n"
        "inner = \"y\"\n"
        "[[rows]]\n"
        "v = 1\n"
        "[[rows]]\n"
        "v = 2\n",
        "inline");
    CHECK(j.at("name") == "x");
    CHECK(j.at("count") == -3);
    CHECK(j.at("flag") == true);
    CHECK(j.at("list").size() == 3);
    CHECK(j.at("pairs")[0][1].at("k") == 1);
    CHECK(j.at("section").at("inner") == "y");
    CHECK(j.at("rows").size() == 2);
    CHECK(j.at("rows")[1].at("v") == 2);

    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n", "dup"), FileError);
    CHECK_THROWS_AS(parse_toml("a = 1.5\n", "float"), FileError);
    CHECK_THROWS_AS(parse_toml("a = \"unterminated\n", "str"), FileError);
}

TEST_CASE("catalog inventory") {
    const auto& c = catalog();
    CHECK(c.rings.size() == 1);
    CHECK(c.tables.size() == 12);
    CHECK(c.embeddings.size() == 10);
    CHECK(c.projreps.size() == 2);
    CHECK(c.plans.size() == 1);
    REQUIRE(c.fixtures.size() == 16);

    std::map<int, int> per_rank;
    for (const auto& f : c.fixtures) ++per_rank[f.rank];
    CHECK(per_rank == std::map<int, int>{{1, 1}, {2, 3}, {3, 3}, {4, 7}, {5, 2}});

    std::set<std::vector<Int>> keys;
    for (const auto& f : c.fixtures) keys.insert(f.key.flat);
    CHECK(keys.size() == 16);
}

TEST_CASE("expected categorification columns") {
    CHECK(fixture("M_1_1").categorifications ==
          std::vector<std::string>{"Rep(Z1)", "Rep(K4,alpha)"});
    CHECK(fixture("M_2_1").categorifications.empty());
    CHECK(fixture("M_4_2").categorifications.empty());
    CHECK(fixture("M_4_5").categorifications == std::vector<std::string>{"Rep(Z4)", "Rep(K4)"});
    CHECK(fixture("M_3_3").categorifications ==
          std::vector<std::string>{"Rep(S3)", "Rep(S4,alpha)"});
    CHECK(fixture("M_5_1").categorifications == std::vector<std::string>{"Rep(S4)"});
}

TEST_CASE("fixture lookup by canonical key") {
    const auto& c = catalog();
    const auto* reg = c.lookup_fixture(canonical_key(regular_module(s4_ring())));
    REQUIRE(reg != nullptr);
    CHECK(reg->label == "M_5_1");

    const BasedModule d4 = restriction_module(c.table("s4"), c.table("d4"), c.embedding("d4"),
                                              s4_ring());
    const auto* m52 = c.lookup_fixture(canonical_key(d4));
    REQUIRE(m52 != nullptr);
    CHECK(m52->label == "M_5_2");

    const BasedModule sum = direct_sum(fixture("M_2_2").module, fixture("M_2_3").module);
    CHECK(c.lookup_fixture(canonical_key(sum)) == nullptr);
}

TEST_CASE("serialize-parse round trip is the identity on fixtures") {
    for (const auto& f : catalog().fixtures) {
        const auto round = module_from_json(module_to_json(f.module), f.module.ring);
        CHECK(canonical_key(round) == f.key);
        CHECK(round.matrices == f.module.matrices);
    }
}

TEST_CASE("an empty root fails naming the missing pieces") {
    const fs::path dir = make_temp_dir("fusionmod-empty-root");
    try {
        load_catalog(dir.string());
        FAIL("load should have thrown");
    } catch (const FileError& e) {
        CHECK(std::string(e.what()).find("rings") != std::string::npos);
    }
}

TEST_CASE("a tampered fixture matrix fails naming the fixture") {
    const fs::path dir = copy_catalog("fusionmod-bad-fixture");
    const fs::path file = dir / "fixtures" / "m_4_2.json";
    auto j = load_config_file(file.string());
    j["matrices"]["rho1"][0][0] = 3;
    std::ofstream(file.string()) << j.dump(2);
    try {
        load_catalog(dir.string());
        FAIL("load should have thrown");
    } catch (const FileError& e) {
        const std::string what = e.what();
        CHECK(what.find("M_4_2") != std::string::npos);
    }
}

TEST_CASE("a tampered character value fails orthogonality at load") {
    const fs::path dir = copy_catalog("fusionmod-bad-table");
    const fs::path file = dir / "data" / "tables" / "z3.toml";
    std::ifstream in(file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto pos = text.find("[\"1\", \"w\", \"w^2\"]");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 17, "[\"1\", \"1\", \"w^2\"]");
    std::ofstream(file.string()) << text;
    try {
        load_catalog(dir.string());
        FAIL("load should have thrown");
    } catch (const FileError& e) {
        const std::string what = e.what();
        CHECK(what.find("z3") != std::string::npos);
        CHECK(what.find("orthogonality") != std::string::npos);
    }
}

TEST_CASE("ring files accept json as well as toml") {
    const fs::path dir = make_temp_dir("fusionmod-json-ring");
    const auto toml = load_config_file((fs::path(default_catalog_root()) / "data" / "rings" /
                                        "s4.toml").string());
    const fs::path file = dir / "ring.json";
    std::ofstream(file.string()) << toml.dump(2);
    const RingPtr ring = ring_from_json(load_config_file(file.string()));
    CHECK(validate_ring(*ring).ok());
    CHECK(ring->rank() == 5);
}
