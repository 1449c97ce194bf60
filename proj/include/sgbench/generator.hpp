#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgbench/canonical.hpp"
#include "sgbench/errors.hpp"
#include "sgbench/hash.hpp"
#include "sgbench/lexicons.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/tsv.hpp"
#include "sgbench/types.hpp"
#include "sgbench/version.hpp"

namespace sgbench {

struct GeneratorConfig {
    DatasetId dataset = DatasetId::SynPaths;
    SplitSizes sizes;           // zero-initialised -> registry defaults
    uint64_t seed = 42;
    int max_attempts = 10000;   // rejection budget per graph (duplicate keys)

    static GeneratorConfig defaults(DatasetId id) {
        GeneratorConfig cfg;
        cfg.dataset = id;
        cfg.sizes = dataset_info(id).default_sizes;
        return cfg;
    }
};

// A 3-edge simple directed path over 4 distinct cities; each edge's
// transport is drawn uniformly. Built one triple at a time using the
// previous tail as the next head; tails landing on an already-used city
// are rejected and redrawn, which rules out cycles.
inline Subgraph sample_path_graph(Pcg32& rng, const Vocabulary& vocab) {
    const auto n_cities = static_cast<uint32_t>(lex::kPathCities.size());
    std::vector<EntityId> nodes;
    nodes.push_back(static_cast<EntityId>(rng.below(n_cities)));
    Subgraph g;
    for (int hop = 0; hop < 3; ++hop) {
        auto relation = static_cast<RelationId>(rng.below(3));
        EntityId tail;
        for (;;) {
            tail = static_cast<EntityId>(rng.below(n_cities));
            if (std::find(nodes.begin(), nodes.end(), tail) == nodes.end()) break;
        }
        g.add({nodes.back(), relation, tail});
        nodes.push_back(tail);
    }
    (void)vocab;
    return g;
}

// One triple per relation: same_type_as over a uniformly chosen type,
// could_be_part_of over city x country, spoken_in over language x country.
inline Subgraph sample_typed_graph(Pcg32& rng, const Vocabulary& vocab) {
    auto entity = [&](const char* label) { return *vocab.entity_id(label); };
    constexpr uint32_t n = 10;
    Subgraph g;
    // same_type_as
    uint32_t type = rng.below(3);
    auto pick = [&](uint32_t t, uint32_t i) -> const char* {
        switch (t) {
            case 0: return lex::kTypeLanguages[i];
            case 1: return lex::kTypeCountries[i];
            default: return lex::kTypeCities[i];
        }
    };
    g.add({entity(pick(type, rng.below(n))), *vocab.relation_id("same_type_as"),
           entity(pick(type, rng.below(n)))});
    g.add({entity(lex::kTypeCities[rng.below(n)]), *vocab.relation_id("could_be_part_of"),
           entity(lex::kTypeCountries[rng.below(n)])});
    g.add({entity(lex::kTypeLanguages[rng.below(n)]), *vocab.relation_id("spoken_in"),
           entity(lex::kTypeCountries[rng.below(n)])});
    return g;
}

// The five-edge role-with-interval template: one name, one role, one time
// interval with start_year strictly before end_year.
inline Subgraph sample_tipr_graph(Pcg32& rng, const Vocabulary& vocab) {
    auto entity = [&](const std::string& label) { return *vocab.entity_id(label); };
    EntityId academic = entity(lex::kAcademicNode);
    EntityId time = entity(lex::kTimeNode);
    EntityId name = entity(lex::kTiprNames[rng.below(static_cast<uint32_t>(lex::kTiprNames.size()))]);
    EntityId role = entity(lex::kTiprRoles[rng.below(static_cast<uint32_t>(lex::kTiprRoles.size()))]);
    int start = lex::kTiprYearMin + static_cast<int>(rng.below(lex::kTiprYearMax - lex::kTiprYearMin));
    int end = start + 1 + static_cast<int>(rng.below(static_cast<uint32_t>(lex::kTiprYearMax - start)));
    Subgraph g;
    g.add({academic, *vocab.relation_id("has_name"), name});
    g.add({academic, *vocab.relation_id("has_role"), role});
    g.add({academic, *vocab.relation_id("has_time"), time});
    g.add({time, *vocab.relation_id("start_year"), entity(std::to_string(start))});
    g.add({time, *vocab.relation_id("end_year"), entity(std::to_string(end))});
    return g;
}

using GraphSampler = Subgraph (*)(Pcg32&, const Vocabulary&);

inline GraphSampler sampler_for(DatasetId id) {
    switch (id) {
        case DatasetId::SynPaths: return &sample_path_graph;
        case DatasetId::SynTypes: return &sample_typed_graph;
        case DatasetId::SynTipr: return &sample_tipr_graph;
        default: throw ContractError("no generator for this dataset");
    }
}

// Generates all three splits. Every graph's RNG stream is derived from
// (seed, split, index), so output is a pure function of the config; graphs
// are globally unique by canonical key, duplicates are resampled from the
// same stream up to the rejection budget.
inline DatasetBundle generate(const GeneratorConfig& config) {
    const DatasetInfo& info = dataset_info(config.dataset);
    if (!info.synthetic) throw ContractError("generate: not a synthetic dataset");
    SplitSizes sizes = config.sizes;
    if (sizes.total() == 0) sizes = info.default_sizes;

    DatasetBundle bundle;
    bundle.name = info.name;
    bundle.vocabulary = make_synthetic_vocabulary(config.dataset);
    GraphSampler sampler = sampler_for(config.dataset);

    KeySet seen;
    seen.reserve(sizes.total() * 2);
    const Split splits[3] = {Split::Train, Split::Valid, Split::Test};
    const size_t counts[3] = {sizes.train, sizes.valid, sizes.test};
    std::vector<Subgraph>* outs[3] = {&bundle.train, &bundle.valid, &bundle.test};
    for (int lane = 0; lane < 3; ++lane) {
        outs[lane]->reserve(counts[lane]);
        for (size_t index = 0; index < counts[lane]; ++index) {
            Pcg32 rng = derive_stream(config.seed, static_cast<uint64_t>(lane), index);
            Subgraph g;
            bool fresh = false;
            for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
                g = sampler(rng, bundle.vocabulary);
                if (seen.insert(canonical_form(g)).second) {
                    fresh = true;
                    break;
                }
            }
            if (!fresh)
                throw GenerationError(std::string("rejection budget exhausted for ") +
                                      info.name + " " + split_name(splits[lane]) + " index " +
                                      std::to_string(index));
            outs[lane]->push_back(std::move(g));
        }
    }
    return bundle;
}

// Writes splits, id-map sidecars and a manifest. Output is byte-identical
// across reruns with the same config (the manifest holds no timestamps).
inline void write_bundle(const std::filesystem::path& out_dir, const DatasetBundle& bundle,
                         const GeneratorConfig* config = nullptr) {
    std::filesystem::create_directories(out_dir);
    write_subgraph_file(out_dir / "train.tsv", bundle.train, bundle.vocabulary);
    write_subgraph_file(out_dir / "valid.tsv", bundle.valid, bundle.vocabulary);
    write_subgraph_file(out_dir / "test.tsv", bundle.test, bundle.vocabulary);
    write_sidecar_vocabulary(out_dir, bundle.vocabulary);

    nlohmann::json manifest;
    manifest["dataset"] = bundle.name;
    manifest["tool_version"] = kToolVersion;
    manifest["counts"] = {{"train", bundle.train.size()},
                          {"valid", bundle.valid.size()},
                          {"test", bundle.test.size()}};
    if (config) {
        manifest["seed"] = config->seed;
        manifest["max_attempts"] = config->max_attempts;
        manifest["generator_version"] = kGeneratorVersion;
        manifest["rng_version"] = kRngVersion;
    }
    nlohmann::json files;
    for (const char* name : {"train.tsv", "valid.tsv", "test.tsv", "entities.txt",
                             "relations.txt"})
        files[name] = sha256_file_hex(out_dir / name);
    manifest["files"] = files;
    write_file_bytes(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

// Loads a bundle from the canonical on-disk layout (plain or .gz splits).
inline DatasetBundle load_bundle(const std::filesystem::path& dir, std::string name) {
    Vocabulary vocab = read_sidecar_vocabulary(dir / "entities.txt", dir / "relations.txt");
    DatasetBundle bundle;
    bundle.name = std::move(name);
    auto read_split = [&](const char* split) {
        std::filesystem::path plain = dir / (std::string(split) + ".tsv");
        std::filesystem::path gz = dir / (std::string(split) + ".tsv.gz");
        const std::filesystem::path& path = std::filesystem::exists(plain) ? plain : gz;
        if (!std::filesystem::exists(path))
            throw IoError("missing split file: " + plain.string() + "[.gz]");
        ParsedGraphs parsed = parse_subgraph_file(path, vocab);
        return std::move(parsed.graphs);
    };
    bundle.train = read_split("train");
    bundle.valid = read_split("valid");
    bundle.test = read_split("test");
    bundle.vocabulary = std::move(vocab);
    return bundle;
}

}  // namespace sgbench
