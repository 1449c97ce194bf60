#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sgbench/errors.hpp"

namespace sgbench {

using EntityId = int32_t;
using RelationId = int32_t;

struct Triple {
    EntityId subject = 0;
    RelationId relation = 0;
    EntityId object = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Entity labels beginning with '_' stand for nodes that occur in a single
// instance only (e.g. `_movie`, `_academic`); models treat them like any
// other entity, the interpretation differs.
inline bool is_existential_label(std::string_view label) {
    return !label.empty() && label.front() == '_';
}

// Bidirectional label <-> dense-id maps for entities and relations.
// Append-only; `seal()` freezes it so unknown labels become lookup errors.
class Vocabulary {
public:
    EntityId add_entity(std::string_view label) {
        if (auto it = entity_index_.find(std::string(label)); it != entity_index_.end())
            return it->second;
        if (sealed_) throw LookupError("unknown entity label: " + std::string(label));
        auto id = static_cast<EntityId>(entity_labels_.size());
        entity_labels_.emplace_back(label);
        entity_index_.emplace(entity_labels_.back(), id);
        return id;
    }

    RelationId add_relation(std::string_view label) {
        if (auto it = relation_index_.find(std::string(label)); it != relation_index_.end())
            return it->second;
        if (sealed_) throw LookupError("unknown relation label: " + std::string(label));
        auto id = static_cast<RelationId>(relation_labels_.size());
        relation_labels_.emplace_back(label);
        relation_index_.emplace(relation_labels_.back(), id);
        return id;
    }

    std::optional<EntityId> entity_id(std::string_view label) const {
        auto it = entity_index_.find(std::string(label));
        if (it == entity_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<RelationId> relation_id(std::string_view label) const {
        auto it = relation_index_.find(std::string(label));
        if (it == relation_index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& entity_label(EntityId id) const {
        if (id < 0 || static_cast<size_t>(id) >= entity_labels_.size())
            throw ContractError("entity id out of range: " + std::to_string(id));
        return entity_labels_[static_cast<size_t>(id)];
    }

    const std::string& relation_label(RelationId id) const {
        if (id < 0 || static_cast<size_t>(id) >= relation_labels_.size())
            throw ContractError("relation id out of range: " + std::to_string(id));
        return relation_labels_[static_cast<size_t>(id)];
    }

    bool is_existential(EntityId id) const { return is_existential_label(entity_label(id)); }

    size_t n_entities() const { return entity_labels_.size(); }
    size_t n_relations() const { return relation_labels_.size(); }

    const std::vector<std::string>& entity_labels() const { return entity_labels_; }
    const std::vector<std::string>& relation_labels() const { return relation_labels_; }

    void seal() { sealed_ = true; }
    bool sealed() const { return sealed_; }

    bool contains_triple_ids(const Triple& t) const {
        return t.subject >= 0 && static_cast<size_t>(t.subject) < n_entities() &&
               t.object >= 0 && static_cast<size_t>(t.object) < n_entities() &&
               t.relation >= 0 && static_cast<size_t>(t.relation) < n_relations();
    }

private:
    std::vector<std::string> entity_labels_;
    std::vector<std::string> relation_labels_;
    std::unordered_map<std::string, EntityId> entity_index_;
    std::unordered_map<std::string, RelationId> relation_index_;
    bool sealed_ = false;
};

// An ordered, duplicate-free list of triples. Entity set/multiset views are
// derived on demand so they can never go stale.
class Subgraph {
public:
    Subgraph() = default;

    static Subgraph from_triples(std::vector<Triple> triples) {
        Subgraph g;
        g.triples_ = std::move(triples);
        for (size_t i = 0; i < g.triples_.size(); ++i)
            for (size_t j = i + 1; j < g.triples_.size(); ++j)
                if (g.triples_[i] == g.triples_[j])
                    throw IntegrityError("duplicate triple within subgraph");
        return g;
    }

    void add(const Triple& t) {
        if (contains(t)) throw IntegrityError("duplicate triple within subgraph");
        triples_.push_back(t);
    }

    bool contains(const Triple& t) const {
        return std::find(triples_.begin(), triples_.end(), t) != triples_.end();
    }

    std::span<const Triple> triples() const { return triples_; }
    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    // Distinct entity ids, ascending.
    std::vector<EntityId> entities() const {
        std::vector<EntityId> ids = entity_multiset();
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }

    // One id per subject/object slot, in triple order.
    std::vector<EntityId> entity_multiset() const {
        std::vector<EntityId> ids;
        ids.reserve(2 * triples_.size());
        for (const Triple& t : triples_) {
            ids.push_back(t.subject);
            ids.push_back(t.object);
        }
        return ids;
    }

    friend bool operator==(const Subgraph&, const Subgraph&) = default;

private:
    std::vector<Triple> triples_;
};

enum class Split { Train, Valid, Test };

inline const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Valid: return "valid";
        case Split::Test: return "test";
    }
    return "?";
}

inline std::optional<Split> split_from_name(std::string_view name) {
    if (name == "train") return Split::Train;
    if (name == "valid" || name == "val" || name == "validation") return Split::Valid;
    if (name == "test") return Split::Test;
    return std::nullopt;
}

struct DatasetBundle {
    std::string name;
    Vocabulary vocabulary;
    std::vector<Subgraph> train;
    std::vector<Subgraph> valid;
    std::vector<Subgraph> test;

    const std::vector<Subgraph>& split(Split s) const {
        switch (s) {
            case Split::Train: return train;
            case Split::Valid: return valid;
            case Split::Test: return test;
        }
        throw ContractError("bad split");
    }
};

}  // namespace sgbench
