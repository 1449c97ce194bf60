#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgbench/canonical.hpp"
#include "sgbench/entity_model.hpp"
#include "sgbench/parallel.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/rules.hpp"
#include "sgbench/structure_model.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

namespace eval_detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace eval_detail

// ---------------------------------------------------------------------------
// Compression: bits-per-graph, split into the entity and structure terms.
// ---------------------------------------------------------------------------

struct CompressionRow {
    double structure_bits = 0;
    double entity_bits = 0;
    double total_bits = 0;  // always the sum of the two terms
};

struct CompressionReport {
    std::string dataset;
    std::string split;
    std::string model;
    size_t n_graphs = 0;
    double structure_bits = 0;  // split averages
    double entity_bits = 0;
    double total_bits = 0;
    std::vector<CompressionRow> per_graph;  // filled when requested

    std::string to_text() const {
        std::string out;
        out += "dataset    model      -log2 p(S|E)   -log2 p(E)     C(S,E)\n";
        char line[160];
        std::snprintf(line, sizeof line, "%-10s %-10s %12.2f %12.2f %12.2f\n", dataset.c_str(),
                      model.c_str(), structure_bits, entity_bits, total_bits);
        out += line;
        return out;
    }

    nlohmann::json to_json() const {
        return {{"dataset", dataset},   {"split", split},
                {"model", model},       {"n_graphs", n_graphs},
                {"structure_bits", structure_bits}, {"entity_bits", entity_bits},
                {"total_bits", total_bits}};
    }

    std::string to_csv() const {
        std::string out = "graph,structure_bits,entity_bits,total_bits\n";
        for (size_t i = 0; i < per_graph.size(); ++i) {
            out += std::to_string(i) + "," + std::to_string(per_graph[i].structure_bits) + "," +
                   std::to_string(per_graph[i].entity_bits) + "," +
                   std::to_string(per_graph[i].total_bits) + "\n";
        }
        return out;
    }
};

inline CompressionReport compression_report(const DatasetBundle& bundle, Split split,
                                            const EntityModel& entity_model,
                                            const StructureModel& structure_model,
                                            int threads = 0, bool keep_per_graph = false) {
    const std::vector<Subgraph>& graphs = bundle.split(split);
    CompressionReport report;
    report.dataset = bundle.name;
    report.split = split_name(split);
    report.model = model_kind_name(structure_model.kind);
    report.n_graphs = graphs.size();
    if (graphs.empty()) return report;

    std::vector<CompressionRow> rows(graphs.size());
    parallel_chunks(graphs.size(), threads, [&](size_t, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            std::vector<EntityId> entities = graphs[i].entities();
            CompressionRow& row = rows[i];
            row.structure_bits = structure_codelength_bits(graphs[i], entities, structure_model);
            row.entity_bits = entity_model.codelength_bits(graphs[i]);
            row.total_bits = row.structure_bits + row.entity_bits;
        }
    });
    double s = 0, e = 0, t = 0;
    for (const CompressionRow& row : rows) {
        s += row.structure_bits;
        e += row.entity_bits;
        t += row.total_bits;
    }
    double n = static_cast<double>(rows.size());
    report.structure_bits = s / n;
    report.entity_bits = e / n;
    report.total_bits = t / n;
    if (keep_per_graph) report.per_graph = std::move(rows);
    return report;
}

// ---------------------------------------------------------------------------
// Sampling: entity sets from the unigram, structure as independent Bernoulli
// draws over the candidate space.
// ---------------------------------------------------------------------------

// Empirical distribution of training entity-set sizes.
struct SizeDistribution {
    std::vector<size_t> sizes;       // distinct sizes, ascending
    std::vector<double> cumulative;  // matching CDF

    static SizeDistribution fit(std::span<const Subgraph> train) {
        if (train.empty()) throw ContractError("size distribution needs training graphs");
        std::map<size_t, size_t> counts;
        for (const Subgraph& g : train) ++counts[g.entities().size()];
        SizeDistribution dist;
        double total = static_cast<double>(train.size());
        double acc = 0;
        for (auto [size, count] : counts) {
            acc += static_cast<double>(count) / total;
            dist.sizes.push_back(size);
            dist.cumulative.push_back(acc);
        }
        dist.cumulative.back() = 1.0;
        return dist;
    }

    size_t sample(Pcg32& rng) const {
        double u = rng.uniform();
        for (size_t i = 0; i < sizes.size(); ++i)
            if (u < cumulative[i]) return sizes[i];
        return sizes.back();
    }

    double share(size_t size) const {
        double prev = 0;
        for (size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] == size) return cumulative[i] - prev;
            prev = cumulative[i];
        }
        return 0;
    }
};

// Draws a set size from the empirical distribution, then entities without
// replacement proportionally to p(e). Mandatory labels (role existentials
// like `_movie`) are always included. A size above the vocabulary is capped;
// the flag reports it.
inline std::vector<EntityId> sample_entities(const EntityModel& model,
                                             const SizeDistribution& size_dist, Pcg32& rng,
                                             std::span<const EntityId> mandatory = {},
                                             bool* capped = nullptr) {
    size_t n = model.n_entities();
    size_t want = size_dist.sample(rng);
    if (want > n) {
        want = n;
        if (capped) *capped = true;
    }
    std::vector<EntityId> chosen;
    std::vector<double> weight(model.probabilities());
    double total = 0;
    for (double w : weight) total += w;
    for (EntityId e : mandatory) {
        if (chosen.size() >= want) break;
        chosen.push_back(e);
        total -= weight[static_cast<size_t>(e)];
        weight[static_cast<size_t>(e)] = 0;
    }
    while (chosen.size() < want && total > 0) {
        double u = rng.uniform() * total;
        double acc = 0;
        size_t pick = n - 1;
        for (size_t i = 0; i < n; ++i) {
            acc += weight[i];
            if (u < acc && weight[i] > 0) {
                pick = i;
                break;
            }
        }
        chosen.push_back(static_cast<EntityId>(pick));
        total -= weight[pick];
        weight[pick] = 0;
    }
    return chosen;
}

// Independent Bernoulli draw per candidate triple; the result may be empty.
// Candidate order (subject-major) fixes the RNG consumption order.
inline Subgraph sample_structure(const StructureModel& model,
                                 std::span<const EntityId> entities, Pcg32& rng) {
    CandidateSpace space(entities, model.n_relations);
    Subgraph g;
    for (EntityId s : space.entities)
        for (RelationId r = 0; r < static_cast<RelationId>(space.n_relations); ++r)
            for (EntityId o : space.entities) {
                Triple t{s, r, o};
                if (rng.uniform() < model.probability(t)) g.add(t);
            }
    return g;
}

// ---------------------------------------------------------------------------
// Sampling metrics under the two settings.
// ---------------------------------------------------------------------------

enum class SamplingSetting { EntitiesAndStructure, StructureOnly };

inline const char* setting_name(SamplingSetting s) {
    return s == SamplingSetting::EntitiesAndStructure ? "E-and-S" : "S-only";
}

inline std::optional<SamplingSetting> setting_from_name(std::string_view name) {
    if (name == "E-and-S" || name == "both" || name == "e-and-s")
        return SamplingSetting::EntitiesAndStructure;
    if (name == "S-only" || name == "s-only" || name == "structure")
        return SamplingSetting::StructureOnly;
    return std::nullopt;
}

struct SampleMetrics {
    size_t n_samples = 0;
    double valid_pct = 0;
    double novel_pct = 0;
    double novel_and_valid_pct = 0;
    double empty_pct = 0;

    std::string to_text() const {
        std::string out = "samples  %valid  %novel&valid  %novel  %empty\n";
        char line[160];
        std::snprintf(line, sizeof line, "%-8zu %7.2f %13.2f %7.2f %7.2f\n", n_samples,
                      valid_pct, novel_and_valid_pct, novel_pct, empty_pct);
        out += line;
        return out;
    }

    nlohmann::json to_json() const {
        return {{"n_samples", n_samples},
                {"valid_pct", valid_pct},
                {"novel_and_valid_pct", novel_and_valid_pct},
                {"novel_pct", novel_pct},
                {"empty_pct", empty_pct}};
    }
};

// Classifies each sample as empty / valid / novel. Empty samples count as
// neither valid nor novel; percentages are over all samples. In the S-only
// setting sample i takes its entity list from test graph i mod |test|.
inline SampleMetrics evaluate_sampling(const DatasetBundle& bundle,
                                       const EntityModel& entity_model,
                                       const StructureModel& structure_model,
                                       SamplingSetting setting, size_t n_samples, uint64_t seed,
                                       const RuleSet& rules, int threads = 0,
                                       std::vector<Subgraph>* dump = nullptr) {
    SampleMetrics metrics;
    metrics.n_samples = n_samples;
    if (n_samples == 0) return metrics;

    KeySet reference = build_key_set(bundle.train);
    for (const Subgraph& g : bundle.valid) reference.insert(canonical_form(g));

    SizeDistribution size_dist = SizeDistribution::fit(bundle.train);
    std::vector<EntityId> mandatory;
    if (!dataset_info(*dataset_from_name(bundle.name)).synthetic) {
        for (const char* label : {lex::kMovieNode, lex::kArticleNode})
            if (auto id = bundle.vocabulary.entity_id(label)) mandatory.push_back(*id);
    }
    if (setting == SamplingSetting::StructureOnly && bundle.test.empty())
        throw ContractError("S-only sampling needs a test split");

    const uint64_t lane = setting == SamplingSetting::EntitiesAndStructure ? 0xE5 : 0x50;
    std::vector<uint8_t> flags(n_samples, 0);  // bit0 empty, bit1 valid, bit2 novel
    if (dump) dump->assign(n_samples, Subgraph{});
    parallel_chunks(n_samples, threads, [&](size_t, size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            Pcg32 rng = derive_stream(seed, lane, i);
            std::vector<EntityId> entities;
            if (setting == SamplingSetting::EntitiesAndStructure) {
                entities = sample_entities(entity_model, size_dist, rng, mandatory);
            } else {
                entities = bundle.test[i % bundle.test.size()].entities();
            }
            Subgraph g = sample_structure(structure_model, entities, rng);
            uint8_t f = 0;
            if (g.empty()) {
                f |= 1;
            } else {
                if (rules.verify(g, bundle.vocabulary).valid) f |= 2;
                if (is_novel(g, reference)) f |= 4;
            }
            flags[i] = f;
            if (dump) (*dump)[i] = std::move(g);
        }
    });

    size_t empty = 0, valid = 0, novel = 0, both = 0;
    for (uint8_t f : flags) {
        empty += (f & 1) != 0;
        valid += (f & 2) != 0;
        novel += (f & 4) != 0;
        both += (f & 6) == 6;
    }
    double n = static_cast<double>(n_samples);
    metrics.empty_pct = 100.0 * static_cast<double>(empty) / n;
    metrics.valid_pct = 100.0 * static_cast<double>(valid) / n;
    metrics.novel_pct = 100.0 * static_cast<double>(novel) / n;
    metrics.novel_and_valid_pct = 100.0 * static_cast<double>(both) / n;
    return metrics;
}

}  // namespace sgbench
