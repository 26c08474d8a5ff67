#include "fusionmod/report.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace fusionmod {

namespace {

using nlohmann::json;

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string matrix_inline(const json& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += "; ";
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j) s += " ";
            s += rows[i][j].dump();
        }
    }
    s += "]";
    return s;
}

json node_json(const SolveNode& node) {
    json j;
    j["rep"] = matrix_json(node.rep);
    if (node.assembled) {
        j["assembled"] = true;
        j["irreducible"] = node.irreducible;
    } else {
        j["next_raw"] = node.next_raw;
        j["next_classes"] = node.next_classes;
        json children = json::array();
        for (const auto& c : node.children) children.push_back(node_json(c));
        j["children"] = std::move(children);
    }
    return j;
}

}  // namespace

FixtureCheck check_classification_against_fixtures(const std::vector<ClassificationResult>& results,
                                                   const Catalog& catalog) {
    FixtureCheck check;
    check.enabled = true;
    int covered_fixtures = 0;
    for (const auto& result : results) {
        std::set<std::vector<Int>> fixture_keys;
        for (const auto& f : catalog.fixtures)
            if (f.rank == result.rank) fixture_keys.insert(f.key.flat);
        if (fixture_keys.empty()) continue;  // ranks beyond the golden tables are not asserted
        covered_fixtures += static_cast<int>(fixture_keys.size());
        std::set<std::vector<Int>> computed;
        for (const auto& k : result.keys) computed.insert(k.flat);
        if (computed != fixture_keys) {
            check.passed = false;
            check.mismatches.push_back("rank " + std::to_string(result.rank) + ": computed " +
                                       std::to_string(computed.size()) + " modules, fixtures have " +
                                       std::to_string(fixture_keys.size()) +
                                       " (or key sets differ)");
        }
    }
    if (covered_fixtures == 0) {
        check.passed = false;
        check.mismatches.push_back("no fixtures cover the classified ranks");
    }
    return check;
}

json classification_report_json(const std::string& ring_id,
                                const std::vector<ClassificationResult>& results,
                                const Catalog* catalog, bool include_trace,
                                const FixtureCheck* fixture_check) {
    json report;
    report["schema"] = 1;
    report["kind"] = "classification";
    report["ring"] = ring_id;
    report["max_rank"] = results.empty() ? 0 : results.back().rank;

    json ranks = json::array();
    for (const auto& result : results) {
        json jr;
        jr["rank"] = result.rank;
        jr["count"] = result.modules.size();
        json modules = json::array();
        for (std::size_t m = 0; m < result.modules.size(); ++m) {
            json jm;
            const Fixture* match =
                catalog ? catalog->lookup_fixture(result.keys[m]) : nullptr;
            jm["label"] = match ? match->label
                                : ("rank" + std::to_string(result.rank) + "#" + std::to_string(m + 1));
            jm["fixture"] = match ? json(match->label) : json(nullptr);
            jm["key"] = result.keys[m].flat;
            json mats = json::object();
            const auto& ring = *result.modules[m].ring;
            for (int i = 0; i < ring.rank(); ++i)
                mats[ring.label(i)] = matrix_json(result.modules[m].matrices[static_cast<std::size_t>(i)]);
            jm["matrices"] = std::move(mats);
            modules.push_back(std::move(jm));
        }
        jr["modules"] = std::move(modules);
        ranks.push_back(std::move(jr));
    }
    report["ranks"] = std::move(ranks);

    if (include_trace) {
        json traces = json::array();
        for (const auto& result : results) {
            json jt;
            jt["rank"] = result.trace.rank;
            jt["stage0_raw"] = result.trace.stage0_raw;
            jt["stage0_classes"] = result.trace.stage0_classes;
            json roots = json::array();
            for (const auto& r : result.trace.roots) roots.push_back(node_json(r));
            jt["branches"] = std::move(roots);
            traces.push_back(std::move(jt));
        }
        report["trace"] = std::move(traces);
    }

    if (fixture_check && fixture_check->enabled) {
        json jc;
        jc["passed"] = fixture_check->passed;
        jc["mismatches"] = fixture_check->mismatches;
        report["fixture_check"] = std::move(jc);
    }
    return report;
}

namespace {

void render_trace_node(std::ostringstream& out, const json& node, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    out << indent << "- rep `" << matrix_inline(node["rep"]) << "`";
    if (node.contains("assembled")) {
        out << " -> module, " << (node["irreducible"].get<bool>() ? "irreducible" : "reducible")
            << "\n";
        return;
    }
    const Int raw = node["next_raw"].get<Int>();
    const Int classes = node["next_classes"].get<Int>();
    out << ": " << raw << (raw == 1 ? " solution" : " solutions") << " in " << classes
        << (classes == 1 ? " class" : " classes") << "\n";
    for (const auto& c : node["children"]) render_trace_node(out, c, depth + 1);
}

}  // namespace

std::string classification_report_markdown(const json& report) {
    std::ostringstream out;
    out << "# Classification of irreducible based modules over r(" << report["ring"].get<std::string>()
        << ")\n\n";
    int total = 0;
    for (const auto& jr : report["ranks"]) total += jr["count"].get<int>();
    out << "Ranks 1.." << report["max_rank"] << ", " << total << " inequivalent irreducible modules.\n";

    for (const auto& jr : report["ranks"]) {
        const int count = jr["count"].get<int>();
        out << "\n## Rank " << jr["rank"] << " (" << count << (count == 1 ? " module" : " modules")
            << ")\n\n";
        for (const auto& jm : jr["modules"]) {
            out << "### " << jm["label"].get<std::string>() << "\n\n";
            for (const auto& [label, rows] : jm["matrices"].items())
                out << "- " << label << ": `" << matrix_inline(rows) << "`\n";
            out << "\n";
        }
    }

    if (report.contains("trace")) {
        out << "\n## Solver trace\n";
        for (const auto& jt : report["trace"]) {
            out << "\n### Rank " << jt["rank"] << "\n\n";
            const Int raw = jt["stage0_raw"].get<Int>();
            const Int classes = jt["stage0_classes"].get<Int>();
            out << "First stage: " << raw << (raw == 1 ? " solution" : " solutions") << " in "
                << classes << (classes == 1 ? " class" : " classes") << ".\n";
            for (const auto& r : jt["branches"]) render_trace_node(out, r, 0);
        }
    }

    if (report.contains("fixture_check")) {
        out << "\n## Fixture comparison\n\n";
        if (report["fixture_check"]["passed"].get<bool>()) {
            out << "All computed canonical keys match the golden fixtures.\n";
        } else {
            out << "MISMATCH against golden fixtures:\n";
            for (const auto& m : report["fixture_check"]["mismatches"])
                out << "- " << m.get<std::string>() << "\n";
        }
    }
    return out.str();
}

json categorification_report_json(const CategorifyResult& result, const Catalog& catalog,
                                  bool check_paper, const ValidationReport* check_report) {
    json report;
    report["schema"] = 1;
    report["kind"] = "categorification";

    json rows = json::array();
    for (const auto& e : result.entries) {
        json jr;
        jr["row"] = e.row;
        jr["description"] = e.description;
        jr["in_paper_table"] = e.in_paper_table;
        jr["credit_swap"] = e.credit_swap;
        jr["rank"] = e.module.rank;
        jr["match"] = e.match ? json(e.match->label) : json(nullptr);
        jr["swap_match"] = e.swap_match ? json(e.swap_match->label) : json(nullptr);
        rows.push_back(std::move(jr));
    }
    report["rows"] = std::move(rows);

    json fixtures = json::array();
    for (const auto& f : catalog.fixtures) {
        json jf;
        jf["label"] = f.label;
        jf["expected"] = f.categorifications;
        jf["credited"] = credited_rows(result, f.label);
        fixtures.push_back(std::move(jf));
    }
    report["fixtures"] = std::move(fixtures);

    if (check_paper) {
        json jc;
        jc["passed"] = check_report ? check_report->ok() : false;
        jc["violations"] = check_report ? check_report->violations : std::vector<std::string>{};
        report["paper_check"] = std::move(jc);
    }
    return report;
}

std::string categorification_report_markdown(const json& report) {
    std::ostringstream out;
    out << "# Categorification matrix over Rep(S4)\n\n";
    out << "| module category | realized on | matches | swapped convention |\n";
    out << "|---|---|---|---|\n";
    for (const auto& jr : report["rows"]) {
        const auto cell = [](const json& v) { return v.is_null() ? std::string("-") : v.get<std::string>(); };
        out << "| " << jr["row"].get<std::string>() << (jr["in_paper_table"].get<bool>() ? "" : " (extra)")
            << " | " << jr["description"].get<std::string>() << " | " << cell(jr["match"]) << " | "
            << cell(jr["swap_match"]) << (jr["credit_swap"].get<bool>() ? "" : " (not credited)")
            << " |\n";
    }

    out << "\n## Per-fixture categorifications\n\n";
    out << "| fixture | credited | expected |\n|---|---|---|\n";
    for (const auto& jf : report["fixtures"]) {
        auto join = [](const json& arr) {
            std::string s;
            for (const auto& v : arr) {
                if (!s.empty()) s += ", ";
                s += v.get<std::string>();
            }
            return s.empty() ? std::string("-") : s;
        };
        out << "| " << jf["label"].get<std::string>() << " | " << join(jf["credited"]) << " | "
            << join(jf["expected"]) << " |\n";
    }

    if (report.contains("paper_check")) {
        out << "\n## Comparison against the published table\n\n";
        if (report["paper_check"]["passed"].get<bool>()) {
            out << "Credited categorifications match the published column exactly.\n";
        } else {
            for (const auto& v : report["paper_check"]["violations"])
                out << "- " << v.get<std::string>() << "\n";
        }
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot write file: " + path);
    out << content;
    if (!out) throw FileError("failed while writing: " + path);
}

}  // namespace fusionmod
