#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sgbench/errors.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

enum class ModelKind { Random, TransE, DistMult, ComplEx };
enum class InitScheme { Uniform, Normal };

inline const char* model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Random: return "random";
        case ModelKind::TransE: return "transe";
        case ModelKind::DistMult: return "distmult";
        case ModelKind::ComplEx: return "complex";
    }
    return "?";
}

inline std::optional<ModelKind> model_kind_from_name(std::string_view name) {
    if (name == "random") return ModelKind::Random;
    if (name == "transe") return ModelKind::TransE;
    if (name == "distmult") return ModelKind::DistMult;
    if (name == "complex") return ModelKind::ComplEx;
    return std::nullopt;
}

inline const char* init_scheme_name(InitScheme s) {
    return s == InitScheme::Uniform ? "uniform" : "normal";
}

inline std::optional<InitScheme> init_scheme_from_name(std::string_view name) {
    if (name == "uniform") return InitScheme::Uniform;
    if (name == "normal") return InitScheme::Normal;
    return std::nullopt;
}

inline double softplus(double x) {
    // log(1 + e^x), stable for large |x|
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Scoring-function family over entity/relation embeddings:
//   transe    -||e_s + r - e_o||   (L2 by default, L1 selectable)
//   distmult  <e_s, r, e_o>
//   complex   Re <e_s, r, conj(e_o)> over complex-valued embeddings
// plus optional scalar biases b[s] + b[r] + b[o]. A candidate triple's
// probability is the logistic of its score. `random` scores everything 0
// (probability 1/2) and charges a flat 2 bits per candidate.
struct StructureModel {
    ModelKind kind = ModelKind::Random;
    int dim = 0;
    bool use_biases = false;
    InitScheme init = InitScheme::Uniform;
    int transe_norm = 2;
    size_t n_entities = 0;
    size_t n_relations = 0;
    // row-major; rows are `width()` doubles, complex rows are [re.. | im..]
    std::vector<double> entity_emb;
    std::vector<double> relation_emb;
    std::vector<double> entity_bias;
    std::vector<double> relation_bias;

    size_t width() const {
        return kind == ModelKind::ComplEx ? 2 * static_cast<size_t>(dim)
                                          : static_cast<size_t>(dim);
    }
    const double* entity_row(EntityId e) const { return entity_emb.data() + width() * e; }
    const double* relation_row(RelationId r) const { return relation_emb.data() + width() * r; }

    static StructureModel random_model(size_t n_entities, size_t n_relations) {
        StructureModel m;
        m.kind = ModelKind::Random;
        m.n_entities = n_entities;
        m.n_relations = n_relations;
        return m;
    }

    static StructureModel create(ModelKind kind, size_t n_entities, size_t n_relations, int dim,
                                 bool biases, InitScheme init, uint64_t seed) {
        if (kind == ModelKind::Random) return random_model(n_entities, n_relations);
        if (dim <= 0) throw ContractError("embedding dimension must be positive");
        StructureModel m;
        m.kind = kind;
        m.dim = dim;
        m.use_biases = biases;
        m.init = init;
        m.n_entities = n_entities;
        m.n_relations = n_relations;
        m.entity_emb.resize(n_entities * m.width());
        m.relation_emb.resize(n_relations * m.width());
        if (biases) {
            m.entity_bias.assign(n_entities, 0.0);
            m.relation_bias.assign(n_relations, 0.0);
        }
        double scale = 1.0 / std::sqrt(static_cast<double>(dim));
        Pcg32 rng = derive_stream(seed, 0xbeef, static_cast<uint64_t>(kind));
        auto fill = [&](std::vector<double>& v) {
            for (double& x : v)
                x = init == InitScheme::Uniform ? (2.0 * rng.uniform() - 1.0) * scale
                                                : rng.normal() * scale;
        };
        fill(m.entity_emb);
        fill(m.relation_emb);
        return m;
    }

    double score(const Triple& t) const {
        if (kind == ModelKind::Random) return 0.0;
        const size_t d = static_cast<size_t>(dim);
        const double* s = entity_row(t.subject);
        const double* r = relation_row(t.relation);
        const double* o = entity_row(t.object);
        double value = 0.0;
        switch (kind) {
            case ModelKind::TransE: {
                if (transe_norm == 1) {
                    for (size_t i = 0; i < d; ++i) value += std::abs(s[i] + r[i] - o[i]);
                    value = -value;
                } else {
                    for (size_t i = 0; i < d; ++i) {
                        double diff = s[i] + r[i] - o[i];
                        value += diff * diff;
                    }
                    value = -std::sqrt(value);
                }
                break;
            }
            case ModelKind::DistMult:
                for (size_t i = 0; i < d; ++i) value += s[i] * r[i] * o[i];
                break;
            case ModelKind::ComplEx: {
                const double *sr = s, *si = s + d;
                const double *rr = r, *ri = r + d;
                const double *orr = o, *oi = o + d;
                for (size_t i = 0; i < d; ++i)
                    value += sr[i] * rr[i] * orr[i] + si[i] * rr[i] * oi[i] +
                             sr[i] * ri[i] * oi[i] - si[i] * ri[i] * orr[i];
                break;
            }
            default: break;
        }
        if (use_biases)
            value += entity_bias[t.subject] + relation_bias[t.relation] + entity_bias[t.object];
        return value;
    }

    // Bernoulli parameter for one candidate, clamped into the open interval.
    double probability(const Triple& t) const {
        if (kind == ModelKind::Random) return 0.5;
        double p = logistic(score(t));
        return std::min(std::max(p, 1e-300), 1.0 - 1e-16);
    }

    bool finite() const {
        auto ok = [](const std::vector<double>& v) {
            for (double x : v)
                if (!std::isfinite(x)) return false;
            return true;
        };
        return ok(entity_emb) && ok(relation_emb) && ok(entity_bias) && ok(relation_bias);
    }
};

// ---------------------------------------------------------------------------
// Candidate space and the p(S|E) codelength.
// ---------------------------------------------------------------------------

inline constexpr size_t kMaxCandidates = 10'000'000;

inline uint64_t pack_triple(const Triple& t) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(t.subject)) << 42) |
           (static_cast<uint64_t>(static_cast<uint32_t>(t.relation)) << 21) |
           static_cast<uint64_t>(static_cast<uint32_t>(t.object));
}

// All (s, r, o) with s,o drawn from the given entity list (self-loops
// included) and r from the full relation vocabulary, in subject-major order.
struct CandidateSpace {
    std::vector<EntityId> entities;  // distinct, ascending
    size_t n_relations = 0;

    CandidateSpace(std::span<const EntityId> given, size_t relations)
        : entities(given.begin(), given.end()), n_relations(relations) {
        std::sort(entities.begin(), entities.end());
        entities.erase(std::unique(entities.begin(), entities.end()), entities.end());
        if (size() > kMaxCandidates)
            throw SizeError("candidate space has " + std::to_string(size()) +
                            " triples (limit " + std::to_string(kMaxCandidates) + ")");
    }

    size_t size() const { return entities.size() * entities.size() * n_relations; }

    Triple at(size_t index) const {
        size_t n = entities.size();
        size_t o = index % n;
        size_t r = (index / n) % n_relations;
        size_t s = index / (n * n_relations);
        return {entities[s], static_cast<RelationId>(r), entities[o]};
    }
};

// log2 p(S|E) over the candidate space: positives contribute log2 sigma(x),
// negatives log2(1 - sigma(x)). Always finite; -result is the structure
// codelength in bits.
inline double structure_log2_prob(const Subgraph& g, std::span<const EntityId> given_entities,
                                  const StructureModel& model) {
    CandidateSpace space(given_entities, model.n_relations);
    if (model.kind == ModelKind::Random) return -2.0 * static_cast<double>(space.size());

    std::unordered_set<uint64_t> positives;
    positives.reserve(g.size() * 2);
    for (const Triple& t : g.triples()) {
        if (!std::binary_search(space.entities.begin(), space.entities.end(), t.subject) ||
            !std::binary_search(space.entities.begin(), space.entities.end(), t.object))
            throw ContractError("graph entity missing from the given entity list");
        positives.insert(pack_triple(t));
    }

    constexpr double ln2 = 0.6931471805599453;
    double log2p = 0.0;
    for (EntityId s : space.entities)
        for (RelationId r = 0; r < static_cast<RelationId>(space.n_relations); ++r)
            for (EntityId o : space.entities) {
                Triple t{s, r, o};
                double x = model.score(t);
                bool positive = positives.count(pack_triple(t)) != 0;
                log2p -= softplus(positive ? -x : x) / ln2;
            }
    return log2p;
}

inline double structure_codelength_bits(const Subgraph& g,
                                        std::span<const EntityId> given_entities,
                                        const StructureModel& model) {
    return -structure_log2_prob(g, given_entities, model);
}

}  // namespace sgbench
