#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "sgbench/errors.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

// How the unigram p(e) is estimated and charged:
//   SlotFrequency — relative frequency over all subject/object slots of the
//     training triples; a graph costs the sum of -log2 p over its slots.
//     This is the default and the mode that reproduces the reported
//     entity-codelength numbers.
//   GraphFrequency — proportion of training subgraphs containing e; a graph
//     costs the sum of -log2 p over its distinct entities.
//   RandomUniform — the untrained baseline: a flat 2.0 bits per vocabulary
//     entity regardless of the graph; uniform weights for sampling.
enum class EntityMode { SlotFrequency, GraphFrequency, RandomUniform };

inline const char* entity_mode_name(EntityMode m) {
    switch (m) {
        case EntityMode::SlotFrequency: return "slot";
        case EntityMode::GraphFrequency: return "graph";
        case EntityMode::RandomUniform: return "random";
    }
    return "?";
}

inline std::optional<EntityMode> entity_mode_from_name(std::string_view name) {
    if (name == "slot") return EntityMode::SlotFrequency;
    if (name == "graph") return EntityMode::GraphFrequency;
    if (name == "random") return EntityMode::RandomUniform;
    return std::nullopt;
}

class EntityModel {
public:
    static EntityModel fit(std::span<const Subgraph> train, const Vocabulary& vocab,
                           EntityMode mode = EntityMode::SlotFrequency,
                           std::optional<double> epsilon = std::nullopt) {
        if (train.empty()) throw ContractError("entity model needs a nonempty training set");
        if (mode == EntityMode::RandomUniform) return random_baseline(vocab);
        EntityModel m;
        m.mode_ = mode;
        size_t n = vocab.n_entities();
        std::vector<double> counts(n, 0.0);
        size_t total_slots = 0;
        if (mode == EntityMode::SlotFrequency) {
            for (const Subgraph& g : train)
                for (EntityId e : g.entity_multiset()) {
                    counts[static_cast<size_t>(e)] += 1.0;
                    ++total_slots;
                }
        } else {
            for (const Subgraph& g : train) {
                for (EntityId e : g.entities()) counts[static_cast<size_t>(e)] += 1.0;
                total_slots += 2 * g.size();
            }
        }
        // Smoothing keeps unseen-entity codelengths finite without visibly
        // perturbing the frequent entities.
        m.epsilon_ = epsilon ? *epsilon : 1.0 / (2.0 * static_cast<double>(total_slots));
        m.prob_.resize(n);
        if (mode == EntityMode::SlotFrequency) {
            double denom = static_cast<double>(total_slots) + m.epsilon_ * static_cast<double>(n);
            for (size_t i = 0; i < n; ++i) m.prob_[i] = (counts[i] + m.epsilon_) / denom;
        } else {
            double denom = static_cast<double>(train.size()) + 2.0 * m.epsilon_;
            for (size_t i = 0; i < n; ++i) m.prob_[i] = (counts[i] + m.epsilon_) / denom;
        }
        return m;
    }

    static EntityModel random_baseline(const Vocabulary& vocab) {
        EntityModel m;
        m.mode_ = EntityMode::RandomUniform;
        m.prob_.assign(vocab.n_entities(), 1.0 / static_cast<double>(vocab.n_entities()));
        return m;
    }

    EntityMode mode() const { return mode_; }
    double epsilon() const { return epsilon_; }
    size_t n_entities() const { return prob_.size(); }

    double probability(EntityId e) const { return prob_.at(static_cast<size_t>(e)); }
    const std::vector<double>& probabilities() const { return prob_; }

    double codelength_bits(const Subgraph& g) const {
        switch (mode_) {
            case EntityMode::RandomUniform:
                return 2.0 * static_cast<double>(prob_.size());
            case EntityMode::SlotFrequency: {
                double bits = 0;
                for (EntityId e : g.entity_multiset())
                    bits -= std::log2(prob_[static_cast<size_t>(e)]);
                return bits;
            }
            case EntityMode::GraphFrequency: {
                double bits = 0;
                for (EntityId e : g.entities())
                    bits -= std::log2(prob_[static_cast<size_t>(e)]);
                return bits;
            }
        }
        throw ContractError("bad entity mode");
    }

private:
    EntityMode mode_ = EntityMode::SlotFrequency;
    double epsilon_ = 0;
    std::vector<double> prob_;
};

}  // namespace sgbench
