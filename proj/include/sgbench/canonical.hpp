#pragma once

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_set>
#include <vector>

#include "sgbench/types.hpp"

namespace sgbench {

// Order-insensitive key for a triple set: sorted, deduplicated triples
// packed little-endian, 12 bytes each. Equal keys <=> equal triple sets.
using CanonicalKey = std::string;
using KeySet = std::unordered_set<CanonicalKey>;

inline CanonicalKey canonical_form(const Subgraph& g) {
    std::vector<Triple> ts(g.triples().begin(), g.triples().end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    CanonicalKey key;
    key.resize(ts.size() * 12);
    char* out = key.data();
    for (const Triple& t : ts) {
        int32_t fields[3] = {t.subject, t.relation, t.object};
        std::memcpy(out, fields, 12);
        out += 12;
    }
    return key;
}

// Weak connectivity: every entity reachable from every other when edge
// direction is ignored. The empty subgraph counts as not connected.
inline bool is_connected(const Subgraph& g) {
    if (g.empty()) return false;
    std::vector<EntityId> nodes = g.entities();
    auto index_of = [&](EntityId id) {
        return static_cast<size_t>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
    };
    std::vector<std::vector<size_t>> adj(nodes.size());
    for (const Triple& t : g.triples()) {
        size_t a = index_of(t.subject);
        size_t b = index_of(t.object);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(nodes.size(), 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        for (size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == nodes.size();
}

// Novelty is exact triple-set inequality against a reference key set
// (train + valid); existential nodes carry fixed role labels in every
// instance, so no isomorphism test is needed.
inline bool is_novel(const Subgraph& g, const KeySet& reference) {
    return reference.find(canonical_form(g)) == reference.end();
}

inline KeySet build_key_set(std::span<const Subgraph> graphs) {
    KeySet keys;
    keys.reserve(graphs.size() * 2);
    for (const Subgraph& g : graphs) keys.insert(canonical_form(g));
    return keys;
}

}  // namespace sgbench
