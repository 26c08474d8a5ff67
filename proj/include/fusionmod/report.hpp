#pragma once

#include "fusionmod/categorify.hpp"
#include "fusionmod/solver.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace fusionmod {

// Report construction builds the JSON document first and renders markdown
// from it, so the two files always carry the same data.

struct FixtureCheck {
    bool enabled = false;
    bool passed = true;
    std::vector<std::string> mismatches;
};

// Compares the classification against the catalog fixtures rank by rank.
FixtureCheck check_classification_against_fixtures(const std::vector<ClassificationResult>& results,
                                                   const Catalog& catalog);

nlohmann::json classification_report_json(const std::string& ring_id,
                                          const std::vector<ClassificationResult>& results,
                                          const Catalog* catalog, bool include_trace,
                                          const FixtureCheck* fixture_check);
std::string classification_report_markdown(const nlohmann::json& report);

nlohmann::json categorification_report_json(const CategorifyResult& result, const Catalog& catalog,
                                            bool check_paper, const ValidationReport* check_report);
std::string categorification_report_markdown(const nlohmann::json& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace fusionmod
