#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sgbench/errors.hpp"
#include "sgbench/generator.hpp"
#include "sgbench/lexicons.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/rules.hpp"
#include "sgbench/tsv.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

// One extracted instance (a movie, an article) before split assignment.
struct InstanceRecord {
    std::string id;
    Subgraph graph;
};

// ---------------------------------------------------------------------------
// Instance-record files: the subgraph .tsv format plus one
// `# instance <id>` header line per record.
// ---------------------------------------------------------------------------

inline std::string serialize_instance_records(std::span<const InstanceRecord> records,
                                              const Vocabulary& vocab) {
    std::string out;
    for (const InstanceRecord& rec : records) {
        out += "# instance ";
        out += rec.id;
        out += '\n';
        serialize_subgraph(out, rec.graph, vocab);
        out += '\n';
    }
    return out;
}

struct ParsedInstances {
    std::vector<InstanceRecord> records;
    Vocabulary vocabulary;
};

inline ParsedInstances parse_instance_records(std::string_view text,
                                              std::optional<Vocabulary> vocabulary = std::nullopt) {
    ParsedInstances out;
    out.vocabulary = vocabulary ? std::move(*vocabulary) : Vocabulary{};
    std::optional<InstanceRecord> current;
    auto flush = [&] {
        if (current) out.records.push_back(std::move(*current));
        current.reset();
    };
    size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view header = "# instance ";
            if (line.substr(0, header.size()) != header)
                throw ParseError("expected '# instance <id>' header", line_no);
            flush();
            current = InstanceRecord{std::string(line.substr(header.size())), {}};
            continue;
        }
        if (!current) throw ParseError("triple before any '# instance' header", line_no);
        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string_view::npos ? std::string_view::npos : line.find('\t', t1 + 1);
        if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
            line.find('\t', t2 + 1) != std::string_view::npos)
            throw ParseError("expected 3 tab-separated fields", line_no);
        Triple t{out.vocabulary.add_entity(normalize_label(line.substr(0, t1))),
                 out.vocabulary.add_relation(normalize_label(line.substr(t1 + 1, t2 - t1 - 1))),
                 out.vocabulary.add_entity(normalize_label(line.substr(t2 + 1)))};
        if (current->graph.contains(t))
            throw IntegrityError("line " + std::to_string(line_no) +
                                 ": duplicate triple within instance");
        current->graph.add(t);
    }
    flush();
    return out;
}

// ---------------------------------------------------------------------------
// Pruning: keep only entities that occur in at least `min_freq` instances,
// iterated to a fixed point.
// ---------------------------------------------------------------------------

enum class PrunePolicy { Remove, Existentialize };

struct PruneResult {
    std::vector<InstanceRecord> instances;
    size_t iterations = 0;
    size_t dropped_instances = 0;
    size_t dropped_triples = 0;
    size_t existentialized_entities = 0;
};

namespace pipeline_detail {

// Role-structural labels are never counted or pruned: existential nodes and
// author-list ordinals.
inline bool structural_label(std::string_view label) {
    return is_existential_label(label) || rules_detail::ordinal_number(label).has_value();
}

inline std::unordered_map<EntityId, size_t> instance_frequency(
    std::span<const InstanceRecord> instances, const Vocabulary& vocab) {
    std::unordered_map<EntityId, size_t> freq;
    for (const InstanceRecord& rec : instances)
        for (EntityId e : rec.graph.entities())
            if (!structural_label(vocab.entity_label(e))) ++freq[e];
    return freq;
}

}  // namespace pipeline_detail

// `Remove`: triples touching infrequent entities are dropped; instances that
// lose their last has_actor or last has_director edge (when those relations
// exist, i.e. movie-shaped data) are dropped, otherwise instances must simply
// stay nonempty. `Existentialize`: infrequent entities become role-indexed
// existential labels (_article, _authorNNN, _subjectNNN by position); cites
// references to infrequent entities are dropped. Both iterate until stable.
inline PruneResult prune(std::vector<InstanceRecord> instances, Vocabulary& vocab,
                         size_t min_freq = 6, PrunePolicy policy = PrunePolicy::Remove) {
    if (min_freq < 1) throw ContractError("min_freq must be >= 1");
    PruneResult result;

    auto rel_id = [&](const char* name) { return vocab.relation_id(name); };
    std::optional<RelationId> has_actor = rel_id("has_actor");
    std::optional<RelationId> has_director = rel_id("has_director");
    std::optional<RelationId> has_name = rel_id("has_name");
    std::optional<RelationId> has_author = rel_id("has_author");
    std::optional<RelationId> cites = rel_id("cites");
    std::optional<RelationId> has_subject = rel_id("has_subject");
    std::optional<RelationId> subclass_of = rel_id("subclass_of");

    bool changed = true;
    while (changed) {
        changed = false;
        ++result.iterations;
        auto freq = pipeline_detail::instance_frequency(instances, vocab);
        auto infrequent = [&](EntityId e) {
            if (pipeline_detail::structural_label(vocab.entity_label(e))) return false;
            auto it = freq.find(e);
            return it == freq.end() || it->second < min_freq;
        };

        std::vector<InstanceRecord> next;
        next.reserve(instances.size());
        for (InstanceRecord& rec : instances) {
            Subgraph pruned;
            if (policy == PrunePolicy::Remove) {
                for (const Triple& t : rec.graph.triples()) {
                    if (infrequent(t.subject) || infrequent(t.object)) {
                        ++result.dropped_triples;
                        changed = true;
                        continue;
                    }
                    pruned.add(t);
                }
            } else {
                // Existentialize: per-instance role-indexed renaming.
                std::unordered_map<EntityId, EntityId> rename;
                int next_author = 0, next_subject = 0;
                auto renamed = [&](EntityId e, const char* role, int& counter) {
                    if (auto it = rename.find(e); it != rename.end()) return it->second;
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%s%03d", role, counter++);
                    EntityId fresh = vocab.add_entity(buf);
                    rename.emplace(e, fresh);
                    ++result.existentialized_entities;
                    return fresh;
                };
                auto article_role = [&](EntityId e) {
                    if (auto it = rename.find(e); it != rename.end()) return it->second;
                    EntityId fresh = vocab.add_entity(lex::kArticleNode);
                    rename.emplace(e, fresh);
                    ++result.existentialized_entities;
                    return fresh;
                };
                for (const Triple& t : rec.graph.triples()) {
                    Triple kept = t;
                    if (cites && t.relation == *cites && infrequent(t.object)) {
                        ++result.dropped_triples;
                        changed = true;
                        continue;  // references to infrequent entities are removed
                    }
                    bool article_source =
                        (has_author && t.relation == *has_author) ||
                        (cites && t.relation == *cites) ||
                        (has_subject && t.relation == *has_subject);
                    if (article_source && infrequent(t.subject))
                        kept.subject = article_role(t.subject);
                    if (has_name && t.relation == *has_name && infrequent(t.object))
                        kept.object = renamed(t.object, "_author", next_author);
                    if (has_subject && t.relation == *has_subject && infrequent(t.object))
                        kept.object = renamed(t.object, "_subject", next_subject);
                    if (subclass_of && t.relation == *subclass_of) {
                        if (infrequent(t.subject))
                            kept.subject = renamed(t.subject, "_subject", next_subject);
                        if (infrequent(t.object))
                            kept.object = renamed(t.object, "_subject", next_subject);
                    }
                    if (kept != t) changed = true;
                    if (!pruned.contains(kept)) pruned.add(kept);
                }
            }

            bool keep = !pruned.empty();
            if (policy == PrunePolicy::Remove && keep && (has_actor || has_director)) {
                auto count_rel = [&](std::optional<RelationId> r) {
                    if (!r) return size_t{1};
                    size_t n = 0;
                    for (const Triple& t : pruned.triples()) n += (t.relation == *r);
                    return n;
                };
                keep = count_rel(has_actor) > 0 && count_rel(has_director) > 0;
            }
            if (!keep) {
                ++result.dropped_instances;
                changed = true;
                continue;
            }
            rec.graph = std::move(pruned);
            next.push_back(std::move(rec));
        }
        instances = std::move(next);
    }
    if (instances.empty()) throw PipelineError("prune removed every instance");
    result.instances = std::move(instances);
    return result;
}

// ---------------------------------------------------------------------------
// Vote-based split assignment. Votes live on entities; an instance's split
// is the most frequent vote among its member entities (ties break
// train > valid > test). Alternates vote unification with split-membership
// repair, then rounds that push conflicted instances into train, and finally
// guarantees that every entity is represented in the training split.
// ---------------------------------------------------------------------------

struct SplitAssignment {
    std::vector<Split> assignment;  // per instance
    size_t n_entities = 0;
    size_t entities_in_train = 0;
    size_t entities_missing_some_split = 0;  // reported, not asserted
    std::vector<std::string> warnings;

    SplitSizes sizes() const {
        SplitSizes s;
        for (Split sp : assignment) {
            if (sp == Split::Train) ++s.train;
            if (sp == Split::Valid) ++s.valid;
            if (sp == Split::Test) ++s.test;
        }
        return s;
    }
};

inline SplitAssignment vote_split(std::span<const InstanceRecord> instances,
                                  std::array<double, 3> ratios = {0.6, 0.2, 0.2},
                                  int unify_iters = 50, int conflict_iters = 20,
                                  uint64_t seed = 42) {
    double ratio_sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(ratio_sum - 1.0) > 1e-6) throw ContractError("split ratios must sum to 1");
    if (instances.empty()) throw ContractError("vote_split needs at least one instance");

    SplitAssignment out;
    if (instances.size() == 1) {
        out.assignment = {Split::Train};
        out.n_entities = instances[0].graph.entities().size();
        out.entities_in_train = out.n_entities;
        out.warnings.push_back("single instance: everything assigned to train");
        return out;
    }

    // Dense entity indexing over the instances' entity sets.
    std::vector<std::vector<uint32_t>> members(instances.size());
    std::unordered_map<EntityId, uint32_t> entity_index;
    std::vector<std::vector<uint32_t>> entity_instances;
    for (size_t i = 0; i < instances.size(); ++i) {
        for (EntityId e : instances[i].graph.entities()) {
            auto [it, fresh] = entity_index.emplace(e, entity_index.size());
            if (fresh) entity_instances.emplace_back();
            members[i].push_back(it->second);
            entity_instances[it->second].push_back(static_cast<uint32_t>(i));
        }
    }
    const size_t n_entities = entity_index.size();
    out.n_entities = n_entities;

    Pcg32 rng(seed, 0x5eed);
    std::vector<int> vote(n_entities);
    for (size_t e = 0; e < n_entities; ++e) {
        double u = rng.uniform();
        vote[e] = u < ratios[0] ? 0 : (u < ratios[0] + ratios[1] ? 1 : 2);
    }

    auto instance_split = [&](size_t i) {
        int counts[3] = {0, 0, 0};
        for (uint32_t e : members[i]) ++counts[vote[e]];
        // most frequent; ties break train > valid > test
        int best = 0;
        for (int s = 1; s < 3; ++s)
            if (counts[s] > counts[best]) best = s;
        return best;
    };
    auto conflicted = [&](size_t i) {
        for (uint32_t e : members[i])
            if (vote[e] != vote[members[i][0]]) return true;
        return false;
    };

    auto repair_memberships = [&] {
        // entity -> which splits its instances currently land in
        std::vector<int> split_of(instances.size());
        for (size_t i = 0; i < instances.size(); ++i) split_of[i] = instance_split(i);
        for (size_t e = 0; e < n_entities; ++e) {
            int counts[3] = {0, 0, 0};
            for (uint32_t i : entity_instances[e]) ++counts[split_of[i]];
            for (int missing = 0; missing < 3; ++missing) {
                if (counts[missing] > 0) continue;
                int donor = 0;
                for (int s = 1; s < 3; ++s)
                    if (counts[s] > counts[donor]) donor = s;
                if (counts[donor] < 2) continue;  // cannot fix without unmaking another split
                for (uint32_t i : entity_instances[e]) {
                    if (split_of[i] != donor) continue;
                    for (uint32_t m : members[i]) vote[m] = missing;
                    split_of[i] = missing;
                    --counts[donor];
                    ++counts[missing];
                    break;  // flip one instance per missing split
                }
            }
        }
    };

    for (int round = 0; round < unify_iters + conflict_iters; ++round) {
        if (round < unify_iters) {
            // unify: a random member entity's vote overwrites the others
            for (size_t i = 0; i < instances.size(); ++i) {
                uint32_t pick = members[i][rng.below(static_cast<uint32_t>(members[i].size()))];
                int v = vote[pick];
                for (uint32_t m : members[i]) vote[m] = v;
            }
        } else {
            // conflicted instances move to train
            for (size_t i = 0; i < instances.size(); ++i)
                if (conflicted(i))
                    for (uint32_t m : members[i]) vote[m] = 0;
        }
        repair_memberships();
    }

    out.assignment.resize(instances.size());
    for (size_t i = 0; i < instances.size(); ++i)
        out.assignment[i] = static_cast<Split>(instance_split(i));

    // Guarantee: every entity occurs in the training split. Moving an
    // instance into train never removes train membership, so one pass in
    // entity order suffices.
    std::vector<char> in_train(n_entities, 0);
    for (size_t i = 0; i < instances.size(); ++i)
        if (out.assignment[i] == Split::Train)
            for (uint32_t m : members[i]) in_train[m] = 1;
    for (size_t e = 0; e < n_entities; ++e) {
        if (in_train[e]) continue;
        uint32_t i = entity_instances[e].front();
        out.assignment[i] = Split::Train;
        for (uint32_t m : members[i]) in_train[m] = 1;
    }

    for (size_t e = 0; e < n_entities; ++e) out.entities_in_train += in_train[e];
    for (size_t e = 0; e < n_entities; ++e) {
        bool seen[3] = {false, false, false};
        for (uint32_t i : entity_instances[e])
            seen[static_cast<int>(out.assignment[i])] = true;
        if (!(seen[0] && seen[1] && seen[2])) ++out.entities_missing_some_split;
    }
    return out;
}

inline DatasetBundle assemble_bundle(std::span<const InstanceRecord> instances,
                                     const SplitAssignment& assignment, Vocabulary vocabulary,
                                     std::string name) {
    if (instances.size() != assignment.assignment.size())
        throw ContractError("assignment size mismatch");
    DatasetBundle bundle;
    bundle.name = std::move(name);
    bundle.vocabulary = std::move(vocabulary);
    for (size_t i = 0; i < instances.size(); ++i) {
        switch (assignment.assignment[i]) {
            case Split::Train: bundle.train.push_back(instances[i].graph); break;
            case Split::Valid: bundle.valid.push_back(instances[i].graph); break;
            case Split::Test: bundle.test.push_back(instances[i].graph); break;
        }
    }
    return bundle;
}

// ---------------------------------------------------------------------------
// Released-data loading. The cache layout is the toolkit's canonical one:
//   <cache>/<dataset>/{train,valid,test}.tsv[.gz] + entities.txt/relations.txt
// ---------------------------------------------------------------------------

inline DatasetBundle load_real_dataset(DatasetId id, const std::filesystem::path& cache_dir,
                                       bool strict = true) {
    const DatasetInfo& info = dataset_info(id);
    if (info.synthetic) throw ContractError("load_real_dataset: synthetic dataset");
    std::filesystem::path dir = cache_dir / info.name;
    if (!std::filesystem::exists(dir / "entities.txt"))
        throw IoError("released dataset not found under " + dir.string() +
                      "; fetch it first (sgbench download --dataset " + std::string(info.name) +
                      ")");
    DatasetBundle bundle = load_bundle(dir, info.name);
    if (strict) {
        const SplitSizes& want = info.default_sizes;
        if (bundle.train.size() != want.train || bundle.valid.size() != want.valid ||
            bundle.test.size() != want.test)
            throw IntegrityError("split sizes for " + std::string(info.name) + " are " +
                                 std::to_string(bundle.train.size()) + "/" +
                                 std::to_string(bundle.valid.size()) + "/" +
                                 std::to_string(bundle.test.size()) + ", expected " +
                                 std::to_string(want.train) + "/" + std::to_string(want.valid) +
                                 "/" + std::to_string(want.test));
        if (bundle.vocabulary.n_entities() != info.n_entities ||
            bundle.vocabulary.n_relations() != info.n_relations)
            throw IntegrityError("vocabulary size mismatch for " + std::string(info.name));
    }
    return bundle;
}

// Download manifest: versioned URLs + checksums for the released archives.
// Checksums start unset and are recorded on first successful download.
struct ArchiveEntry {
    std::string dataset;
    std::string url;
    std::string sha256;  // empty = not yet pinned
};

struct DownloadManifest {
    std::string doi = "10.5281/zenodo.7824818";
    int version = 1;
    std::vector<ArchiveEntry> entries;

    static DownloadManifest builtin() {
        DownloadManifest m;
        m.entries = {
            {"wd-movies", "https://zenodo.org/api/records/7824818/files/wd-movies.zip/content",
             ""},
            {"wd-articles",
             "https://zenodo.org/api/records/7824818/files/wd-articles.zip/content", ""},
        };
        return m;
    }

    nlohmann::json to_json() const {
        nlohmann::json entries_json = nlohmann::json::array();
        for (const ArchiveEntry& e : entries)
            entries_json.push_back(
                {{"dataset", e.dataset}, {"url", e.url}, {"sha256", e.sha256}});
        return {{"doi", doi}, {"version", version}, {"entries", entries_json}};
    }

    static DownloadManifest from_json(const nlohmann::json& j) {
        DownloadManifest m;
        m.doi = j.value("doi", m.doi);
        m.version = j.value("version", 1);
        for (const auto& e : j.at("entries"))
            m.entries.push_back({e.at("dataset").get<std::string>(),
                                 e.at("url").get<std::string>(), e.value("sha256", "")});
        return m;
    }
};

}  // namespace sgbench
