#pragma once

#include "fusionmod/core.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace fusionmod {

// Reader for the TOML subset the catalog files use: key/value pairs, string
// and integer and boolean scalars, (nested) arrays, inline tables, [table]
// and [[array-of-table]] headers, and # comments. Output is a JSON tree so
// every loader has a single downstream representation; .json files are
// accepted everywhere a .toml file is.
nlohmann::json parse_toml(const std::string& text, const std::string& origin);

// Dispatches on extension: .toml via parse_toml, .json via nlohmann.
nlohmann::json load_config_file(const std::string& path);

}  // namespace fusionmod
