#pragma once

#include "fusionmod/catalog.hpp"

#include <string>
#include <vector>

namespace fusionmod {

// One row of the categorification matrix: a module category over Rep(S4)
// realized on the module side, in both labeling conventions for the pair of
// 3-dimensional basis elements.
struct CategorifyEntry {
    std::string row;          // e.g. "Rep(Z4)" or "Rep(D4,alpha)"
    std::string description;  // the concrete subgroup/cocycle used
    // The published table covers one subgroup per isomorphism type; extra
    // embeddings are computed and reported but not matched against it.
    bool in_paper_table = true;
    // Whether the published column credits the swapped convention's match
    // for this row.
    bool credit_swap = true;
    BasedModule module;
    BasedModule swapped;
    const Fixture* match = nullptr;
    const Fixture* swap_match = nullptr;
};

struct CategorifyResult {
    std::vector<CategorifyEntry> entries;
};

// Builds and verifies every restriction/projective module in the catalog's
// inventory, both conventions, and matches each against the fixtures.
CategorifyResult run_categorify(const Catalog& catalog);

// Exact comparison of the credited categorification sets against the
// fixtures' expected lists; every disagreement is a report entry.
ValidationReport check_against_published_table(const CategorifyResult& result, const Catalog& catalog);

// Credited row names per fixture label, derived from the matrix.
std::vector<std::string> credited_rows(const CategorifyResult& result, const std::string& fixture_label);

}  // namespace fusionmod
