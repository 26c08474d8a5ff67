#include "fusionmod/catalog.hpp"
#include "fusionmod/categorify.hpp"
#include "fusionmod/report.hpp"
#include "fusionmod/tomlite.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

using namespace fusionmod;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct ClassifyOptions {
    std::string builtin;
    std::string ring_path;
    std::string plan_path;
    int max_rank = 5;
    bool trace = false;
    bool expect_fixtures = false;
    std::string out_dir = ".";
};

int run_classify(const ClassifyOptions& opt) {
    RingPtr ring;
    SolvePlan plan;
    std::optional<Catalog> catalog;

    if (!opt.builtin.empty()) {
        catalog = load_catalog(default_catalog_root());
        if (!catalog->rings.count(opt.builtin) || !catalog->plans.count(opt.builtin))
            throw FileError("no built-in ring/plan named '" + opt.builtin + "'");
        ring = catalog->ring_ptr(opt.builtin);
        plan = catalog->plan(opt.builtin);
    } else {
        if (opt.ring_path.empty() || opt.plan_path.empty())
            throw FileError("classify needs --builtin or both --ring and --plan");
        ring = ring_from_json(load_config_file(opt.ring_path));
        const auto ring_report = validate_ring(*ring);
        if (!ring_report.ok())
            throw Error("ring file invalid:\n" + ring_report.summary());
        plan = plan_from_json(load_config_file(opt.plan_path), *ring);
        if (opt.expect_fixtures) catalog = load_catalog(default_catalog_root());
    }

    const auto results = classify(ring, opt.max_rank, plan);

    FixtureCheck fixture_check;
    if (opt.expect_fixtures && catalog)
        fixture_check = check_classification_against_fixtures(results, *catalog);

    fs::create_directories(opt.out_dir);
    const auto report = classification_report_json(
        ring->id(), results, catalog ? &*catalog : nullptr, opt.trace,
        opt.expect_fixtures ? &fixture_check : nullptr);
    write_text_file((fs::path(opt.out_dir) / "classification.json").string(), report.dump(2) + "\n");
    write_text_file((fs::path(opt.out_dir) / "classification.md").string(),
                    classification_report_markdown(report));

    int total = 0;
    std::cout << "ring " << ring->id() << ", ranks 1.." << opt.max_rank << ":";
    for (const auto& r : results) {
        std::cout << " " << r.modules.size();
        total += static_cast<int>(r.modules.size());
    }
    std::cout << " (total " << total << ")\n";
    std::cout << "reports written to " << opt.out_dir << "/classification.{md,json}\n";

    if (opt.expect_fixtures && !fixture_check.passed) {
        for (const auto& m : fixture_check.mismatches) std::cerr << "fixture mismatch: " << m << "\n";
        return kExitVerification;
    }
    return kExitOk;
}

struct CategorifyOptions {
    std::string builtin = "s4";
    bool check_paper = false;
    std::string out_dir = ".";
};

int run_categorify(const CategorifyOptions& opt) {
    const Catalog catalog = load_catalog(default_catalog_root());
    if (opt.builtin != "s4") throw FileError("only the built-in s4 catalog is available");

    const CategorifyResult result = run_categorify(catalog);
    ValidationReport check_report;
    if (opt.check_paper) check_report = check_against_published_table(result, catalog);

    fs::create_directories(opt.out_dir);
    const auto report = categorification_report_json(result, catalog, opt.check_paper,
                                                     opt.check_paper ? &check_report : nullptr);
    write_text_file((fs::path(opt.out_dir) / "categorification.json").string(),
                    report.dump(2) + "\n");
    write_text_file((fs::path(opt.out_dir) / "categorification.md").string(),
                    categorification_report_markdown(report));

    for (const auto& e : result.entries) {
        std::cout << e.row << " -> " << (e.match ? e.match->label : std::string("?"));
        if (e.swap_match && (!e.match || e.swap_match->label != e.match->label))
            std::cout << " (swapped: " << e.swap_match->label << ")";
        std::cout << "\n";
    }
    std::cout << "reports written to " << opt.out_dir << "/categorification.{md,json}\n";

    if (opt.check_paper && !check_report.ok()) {
        std::cerr << check_report.summary();
        return kExitVerification;
    }
    return kExitOk;
}

struct CheckOptions {
    std::string only;
};

int run_check(const CheckOptions& opt) {
    bool all_ok = true;
    auto suite_enabled = [&](const std::string& name) { return opt.only.empty() || opt.only == name; };
    auto print_result = [&](const std::string& what, const ValidationReport& report) {
        if (report.ok()) {
            std::cout << "ok   " << what << "\n";
        } else {
            all_ok = false;
            std::cout << "FAIL " << what << "\n" << report.summary();
        }
    };

    Catalog catalog;
    try {
        catalog = load_catalog(default_catalog_root());
        if (suite_enabled("catalog"))
            std::cout << "ok   catalog: " << catalog.rings.size() << " rings, "
                      << catalog.tables.size() << " tables, " << catalog.embeddings.size()
                      << " embeddings, " << catalog.fixtures.size() << " fixtures\n";
    } catch (const std::exception& e) {
        std::cout << "FAIL catalog: " << e.what() << "\n";
        return kExitVerification;
    }

    if (suite_enabled("orthogonality")) {
        for (const auto& [id, t] : catalog.tables) {
            print_result("orthogonality: " + id, validate_table(t));
            if (t.kind == TableKind::DoubleCover)
                print_result("double cover structure: " + id,
                             validate_double_cover(t, catalog.table(t.base_id)));
        }
    }

    if (suite_enabled("cocycle")) {
        for (const auto& [id, d] : catalog.projreps) {
            const auto n = d.elements.size();
            print_result("cocycle/projective data: " + id + " (" + std::to_string(n * n) +
                             " pairs, " + std::to_string(n * n * n) + " triples)",
                         verify_projective_rep(d, catalog.table(d.group_id)));
        }
    }

    if (suite_enabled("based")) {
        try {
            const CategorifyResult result = run_categorify(catalog);
            for (const auto& e : result.entries) {
                ValidationReport combined;
                for (const auto* m : {&e.module, &e.swapped}) {
                    const auto rep = check_representation(*m);
                    const auto based = check_based(*m);
                    for (const auto& v : rep.violations) combined.add(v);
                    for (const auto& v : based.violations) combined.add(v);
                }
                print_result("based module: " + e.row, combined);
            }
        } catch (const std::exception& e) {
            std::cout << "FAIL based-module suite: " << e.what() << "\n";
            all_ok = false;
        }
    }

    return all_ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification and categorification of based modules over fusion rings"};
    app.require_subcommand(1);

    ClassifyOptions classify_opt;
    auto* classify_cmd = app.add_subcommand("classify", "enumerate irreducible based modules by rank");
    classify_cmd->add_option("--builtin", classify_opt.builtin, "use a catalog ring and its plan");
    classify_cmd->add_option("--ring", classify_opt.ring_path, "ring definition file (toml/json)");
    classify_cmd->add_option("--plan", classify_opt.plan_path, "solve plan file (toml/json)");
    classify_cmd->add_option("--max-rank", classify_opt.max_rank, "classify ranks 1..N")
        ->check(CLI::PositiveNumber);
    classify_cmd->add_flag("--trace", classify_opt.trace, "include per-case solution counts");
    classify_cmd->add_flag("--expect-fixtures", classify_opt.expect_fixtures,
                           "compare against the golden fixtures");
    classify_cmd->add_option("--out", classify_opt.out_dir, "output directory");

    CategorifyOptions categorify_opt;
    auto* categorify_cmd =
        app.add_subcommand("categorify", "compute restriction/projective modules and match fixtures");
    categorify_cmd->add_option("--builtin", categorify_opt.builtin, "catalog ring id");
    categorify_cmd->add_flag("--check-paper", categorify_opt.check_paper,
                             "fail unless the matrix reproduces the published table");
    categorify_cmd->add_option("--out", categorify_opt.out_dir, "output directory");

    CheckOptions check_opt;
    auto* check_cmd = app.add_subcommand("check", "validate catalog data and verification suites");
    check_cmd->add_option("--only", check_opt.only, "run a single suite")
        ->check(CLI::IsMember({"catalog", "orthogonality", "cocycle", "based"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(classify_opt);
        if (categorify_cmd->parsed()) return run_categorify(categorify_opt);
        if (check_cmd->parsed()) return run_check(check_opt);
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
