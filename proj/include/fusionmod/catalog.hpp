#pragma once

#include "fusionmod/chars.hpp"
#include "fusionmod/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace fusionmod {

// A golden module with the published matrices as printed, its canonical
// key, and the categorifications its table row claims.
struct Fixture {
    std::string label;  // e.g. "M_4_5"
    int rank = 0;
    BasedModule module;
    CanonicalKey key;
    std::vector<std::string> categorifications;
};

// Everything file-backed: rings, character tables, embeddings, projective
// representation data, solve plans, and golden fixtures. Loaded once, fully
// validated, then immutable.
struct Catalog {
    std::string root;
    std::map<std::string, RingPtr> rings;
    std::map<std::string, CharacterTable> tables;
    std::map<std::string, Embedding> embeddings;  // keyed by subgroup table id
    std::map<std::string, ProjRepData> projreps;
    std::map<std::string, SolvePlan> plans;
    std::vector<Fixture> fixtures;

    const FusionRing& ring(const std::string& id) const;
    RingPtr ring_ptr(const std::string& id) const;
    const CharacterTable& table(const std::string& id) const;
    const Embedding& embedding(const std::string& sub_id) const;
    const ProjRepData& projrep(const std::string& id) const;
    const SolvePlan& plan(const std::string& id) const;

    const Fixture* lookup_fixture(const CanonicalKey& key) const;
    const Fixture* fixture_by_label(const std::string& label) const;
};

// Points the permutation words act on; the catalog's groups all sit in S_4.
inline constexpr int kCatalogPoints = 4;

// FUSIONMOD_DATA when set, otherwise the compiled-in source tree root.
std::string default_catalog_root();

// Parses and validates the whole directory; any failure aborts the load
// naming the offending file and invariant.
Catalog load_catalog(const std::string& root);

RingPtr ring_from_json(const nlohmann::json& j);

}  // namespace fusionmod
