#include "fusionmod/catalog.hpp"

#include "fusionmod/tomlite.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>

#ifndef FUSIONMOD_ROOT_DIR
#define FUSIONMOD_ROOT_DIR "."
#endif

namespace fusionmod {

namespace fs = std::filesystem;

const FusionRing& Catalog::ring(const std::string& id) const { return *ring_ptr(id); }

RingPtr Catalog::ring_ptr(const std::string& id) const {
    auto it = rings.find(id);
    if (it == rings.end()) throw Error("catalog has no ring '" + id + "'");
    return it->second;
}

const CharacterTable& Catalog::table(const std::string& id) const {
    auto it = tables.find(id);
    if (it == tables.end()) throw Error("catalog has no character table '" + id + "'");
    return it->second;
}

const Embedding& Catalog::embedding(const std::string& sub_id) const {
    auto it = embeddings.find(sub_id);
    if (it == embeddings.end()) throw Error("catalog has no embedding for '" + sub_id + "'");
    return it->second;
}

const ProjRepData& Catalog::projrep(const std::string& id) const {
    auto it = projreps.find(id);
    if (it == projreps.end()) throw Error("catalog has no projective data '" + id + "'");
    return it->second;
}

const SolvePlan& Catalog::plan(const std::string& id) const {
    auto it = plans.find(id);
    if (it == plans.end()) throw Error("catalog has no plan '" + id + "'");
    return it->second;
}

const Fixture* Catalog::lookup_fixture(const CanonicalKey& key) const {
    for (const auto& f : fixtures)
        if (f.key == key) return &f;
    return nullptr;
}

const Fixture* Catalog::fixture_by_label(const std::string& label) const {
    for (const auto& f : fixtures)
        if (f.label == label) return &f;
    return nullptr;
}

std::string default_catalog_root() {
    if (const char* env = std::getenv("FUSIONMOD_DATA")) return env;
    return FUSIONMOD_ROOT_DIR;
}

RingPtr ring_from_json(const nlohmann::json& j) {
    const std::string id = j.at("id").get<std::string>();
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    auto index_of = [&](const std::string& label) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw Error("ring '" + id + "': unknown label '" + label + "'");
        return static_cast<int>(it - labels.begin());
    };
    const int unit = index_of(j.at("unit").get<std::string>());

    std::vector<int> dual(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) dual[i] = static_cast<int>(i);
    if (j.contains("dual"))
        for (const auto& [a, b] : j.at("dual").items()) {
            dual[static_cast<std::size_t>(index_of(a))] = index_of(b.get<std::string>());
            dual[static_cast<std::size_t>(index_of(b.get<std::string>()))] = index_of(a);
        }

    // Each unordered pair may appear once; the loader symmetrizes and the
    // validator then checks the symmetrized result.
    std::map<std::array<int, 3>, Int> consts;
    auto put = [&](int a, int b, int k, Int v) {
        auto [it, inserted] = consts.emplace(std::array<int, 3>{a, b, k}, v);
        if (!inserted && it->second != v)
            throw Error("ring '" + id + "': conflicting values for a product entry");
    };
    for (const auto& entry : j.at("products")) {
        const int a = index_of(entry.at(0).get<std::string>());
        const int b = index_of(entry.at(1).get<std::string>());
        for (const auto& [label, coeff] : entry.at(2).items()) {
            const Int v = coeff.get<Int>();
            if (v < 0) throw Error("ring '" + id + "': negative structure constant");
            if (v == 0) continue;
            put(a, b, index_of(label), v);
            put(b, a, index_of(label), v);
        }
    }
    return std::make_shared<FusionRing>(id, labels, unit, std::move(dual), std::move(consts));
}

namespace {

std::vector<fs::path> sorted_files(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::exists(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

[[noreturn]] void load_failure(const fs::path& file, const std::string& why) {
    throw FileError(file.string() + ": " + why);
}

Fixture fixture_from_json(const nlohmann::json& j, const Catalog& catalog) {
    Fixture f;
    f.label = j.at("label").get<std::string>();
    f.module = module_from_json(j, catalog.ring_ptr(j.at("ring").get<std::string>()));
    f.rank = f.module.rank;
    if (j.contains("categorifications"))
        f.categorifications = j.at("categorifications").get<std::vector<std::string>>();
    f.key = canonical_key(f.module);
    return f;
}

}  // namespace

Catalog load_catalog(const std::string& root) {
    Catalog catalog;
    catalog.root = root;
    const fs::path base(root);

    const fs::path rings_dir = base / "data" / "rings";
    const auto ring_files = sorted_files(rings_dir);
    if (ring_files.empty())
        throw FileError("missing required ring definitions under " + rings_dir.string());
    for (const auto& file : ring_files) {
        try {
            RingPtr ring = ring_from_json(load_config_file(file.string()));
            const auto report = validate_ring(*ring);
            if (!report.ok()) load_failure(file, "ring axioms violated:\n" + report.summary());
            catalog.rings[ring->id()] = std::move(ring);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }

    const fs::path tables_dir = base / "data" / "tables";
    const auto table_files = sorted_files(tables_dir);
    if (table_files.empty())
        throw FileError("missing required character tables under " + tables_dir.string());
    for (const auto& file : table_files) {
        try {
            CharacterTable t = table_from_json(load_config_file(file.string()));
            const auto report = validate_table(t);
            if (!report.ok()) load_failure(file, "orthogonality failed:\n" + report.summary());
            catalog.tables[t.id] = std::move(t);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }
    for (const auto& [id, t] : catalog.tables) {
        if (t.kind != TableKind::DoubleCover) continue;
        auto bt = catalog.tables.find(t.base_id);
        if (bt == catalog.tables.end())
            throw FileError("double cover '" + id + "' references missing base table '" +
                            t.base_id + "'");
        const auto report = validate_double_cover(t, bt->second);
        if (!report.ok())
            throw FileError("double cover '" + id + "' inconsistent:\n" + report.summary());
    }

    for (const auto& file : sorted_files(base / "data" / "embeddings")) {
        try {
            Embedding e = embedding_from_json(load_config_file(file.string()));
            const auto report = validate_embedding(e, catalog.table(e.sub_id),
                                                   catalog.table(e.super_id), kCatalogPoints);
            if (!report.ok()) load_failure(file, "embedding invalid:\n" + report.summary());
            catalog.embeddings[e.sub_id] = std::move(e);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }

    for (const auto& file : sorted_files(base / "data" / "projective")) {
        try {
            ProjRepData d = projrep_from_json(load_config_file(file.string()), kCatalogPoints);
            const auto report = verify_projective_rep(d, catalog.table(d.group_id));
            if (!report.ok())
                load_failure(file, "projective representation invalid:\n" + report.summary());
            catalog.projreps[d.id] = std::move(d);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }

    const fs::path plans_dir = base / "data" / "plans";
    const auto plan_files = sorted_files(plans_dir);
    if (plan_files.empty())
        throw FileError("missing required solve plans under " + plans_dir.string());
    for (const auto& file : plan_files) {
        try {
            const auto j = load_config_file(file.string());
            const std::string ring_id = j.at("ring").get<std::string>();
            SolvePlan p = plan_from_json(j, catalog.ring(ring_id));
            catalog.plans[p.id] = std::move(p);
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }

    std::set<std::string> labels;
    std::set<std::vector<Int>> keys;
    for (const auto& file : sorted_files(base / "fixtures")) {
        try {
            Fixture f = fixture_from_json(load_config_file(file.string()), catalog);
            const auto rep = check_representation(f.module);
            const auto based = check_based(f.module);
            if (!rep.ok() || !based.ok())
                load_failure(file, "fixture '" + f.label + "' is not a based module:\n" +
                                       rep.summary() + based.summary());
            if (!is_irreducible(f.module))
                load_failure(file, "fixture '" + f.label + "' is reducible");
            if (!labels.insert(f.label).second)
                load_failure(file, "duplicate fixture label '" + f.label + "'");
            if (!keys.insert(f.key.flat).second)
                load_failure(file, "fixture '" + f.label + "' duplicates another fixture's key");
            catalog.fixtures.push_back(std::move(f));
        } catch (const FileError&) {
            throw;
        } catch (const std::exception& e) {
            load_failure(file, e.what());
        }
    }
    std::sort(catalog.fixtures.begin(), catalog.fixtures.end(), [](const Fixture& a, const Fixture& b) {
        return std::make_pair(a.rank, a.label) < std::make_pair(b.rank, b.label);
    });
    return catalog;
}

}  // namespace fusionmod
