#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sgbench/lexicons.hpp"
#include "sgbench/types.hpp"

namespace sgbench {

struct Violation {
    std::string rule;
    std::string witness;
};

struct ValidityReport {
    bool valid = true;
    std::vector<Violation> violations;

    std::string to_text() const {
        if (valid) return "valid\n";
        std::string out;
        for (const Violation& v : violations) {
            out += v.rule;
            out += ": ";
            out += v.witness;
            out += '\n';
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const Violation& v : violations)
            arr.push_back({{"rule", v.rule}, {"witness", v.witness}});
        return {{"valid", valid}, {"violations", arr}};
    }
};

// Label-level view of one subgraph, shared by all rule checks.
struct GraphView {
    const Subgraph* graph = nullptr;
    const Vocabulary* vocab = nullptr;
    std::vector<EntityId> entities;

    const std::string& label(EntityId id) const { return vocab->entity_label(id); }
    const std::string& rel(RelationId id) const { return vocab->relation_label(id); }

    std::string triple_text(const Triple& t) const {
        return label(t.subject) + " " + rel(t.relation) + " " + label(t.object);
    }

    int in_degree(EntityId e) const {
        int n = 0;
        for (const Triple& t : graph->triples()) n += (t.object == e);
        return n;
    }
    int out_degree(EntityId e) const {
        int n = 0;
        for (const Triple& t : graph->triples()) n += (t.subject == e);
        return n;
    }
};

struct Rule {
    std::string id;
    std::string kind;  // structural | typing | temporal | cardinality | connectivity
    std::string text;  // human-readable first-order form
    std::function<void(const GraphView&, std::vector<Violation>&)> check;
};

class RuleSet {
public:
    RuleSet(DatasetId dataset, std::vector<Rule> rules)
        : dataset_(dataset), rules_(std::move(rules)) {}

    DatasetId dataset() const { return dataset_; }
    const std::vector<Rule>& rules() const { return rules_; }

    const Rule* find(std::string_view id) const {
        for (const Rule& r : rules_)
            if (r.id == id) return &r;
        return nullptr;
    }

    // Deterministic verdict; reports every violated rule, not just the first.
    ValidityReport verify(const Subgraph& g, const Vocabulary& vocab) const {
        GraphView view;
        view.graph = &g;
        view.vocab = &vocab;
        view.entities = g.entities();
        ValidityReport report;
        for (const Rule& rule : rules_) {
            std::vector<Violation> found;
            rule.check(view, found);
            for (Violation& v : found) report.violations.push_back(std::move(v));
        }
        report.valid = report.violations.empty();
        return report;
    }

private:
    DatasetId dataset_;
    std::vector<Rule> rules_;
};

// ---------------------------------------------------------------------------
// Rule construction helpers
// ---------------------------------------------------------------------------
namespace rules_detail {

inline std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    long value = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + (c - '0');
        if (value > 1'000'000'000L) return std::nullopt;
    }
    return static_cast<int>(value);
}

// "ordinal_007" -> 7
inline std::optional<int> ordinal_number(std::string_view label) {
    constexpr std::string_view prefix = "ordinal_";
    if (label.substr(0, prefix.size()) != prefix) return std::nullopt;
    return parse_int(label.substr(prefix.size()));
}

inline Rule edge_count_rule(std::string prefix, size_t expected) {
    return {prefix + ".edge_count", "cardinality",
            "number of edges: " + std::to_string(expected),
            [expected](const GraphView& v, std::vector<Violation>& out) {
                if (v.graph->size() != expected)
                    out.push_back({"", "graph has " + std::to_string(v.graph->size()) +
                                           " edges, expected " + std::to_string(expected)});
            }};
}

// Each violation gets the rule id stamped on after check() returns.
inline std::vector<Rule> stamp(std::vector<Rule> rules) {
    for (Rule& rule : rules) {
        auto inner = std::move(rule.check);
        std::string id = rule.id;
        rule.check = [inner, id](const GraphView& v, std::vector<Violation>& out) {
            size_t first = out.size();
            inner(v, out);
            for (size_t i = first; i < out.size(); ++i) out[i].rule = id;
        };
    }
    return rules;
}

// --- syn-paths -------------------------------------------------------------

inline std::vector<Rule> make_paths_rules() {
    using VV = std::vector<Violation>;
    static const std::unordered_set<std::string_view> kCities(lex::kPathCities.begin(),
                                                              lex::kPathCities.end());
    static const std::unordered_set<std::string_view> kTransports(lex::kPathRelations.begin(),
                                                                  lex::kPathRelations.end());
    std::vector<Rule> rules;

    rules.push_back({"paths.relation_domain", "structural",
                     "edge(x,y) <=> cycle_to(x,y) | drive_to(x,y) | train_to(x,y)",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (!kTransports.count(v.rel(t.relation)))
                                 out.push_back({"", "relation '" + v.rel(t.relation) +
                                                        "' is not a transport"});
                     }});
    rules.push_back({"paths.entity_domain", "typing", "every node is a known city",
                     [](const GraphView& v, VV& out) {
                         for (EntityId e : v.entities)
                             if (!kCities.count(v.label(e)))
                                 out.push_back({"", "unknown city '" + v.label(e) + "'"});
                     }});
    rules.push_back({"paths.single_root", "structural",
                     "exactly one node has no incoming edge",
                     [](const GraphView& v, VV& out) {
                         std::vector<EntityId> roots;
                         for (EntityId e : v.entities)
                             if (v.in_degree(e) == 0) roots.push_back(e);
                         if (roots.size() == 1) return;
                         std::string w = "found " + std::to_string(roots.size()) + " roots";
                         for (EntityId e : roots) w += " " + v.label(e);
                         out.push_back({"", w});
                     }});
    rules.push_back({"paths.in_degree", "structural", "edge(y,x) & edge(z,x) => y = z",
                     [](const GraphView& v, VV& out) {
                         for (EntityId e : v.entities)
                             if (v.in_degree(e) > 1)
                                 out.push_back({"", "node '" + v.label(e) + "' has in-degree " +
                                                        std::to_string(v.in_degree(e))});
                     }});
    rules.push_back({"paths.out_degree", "structural", "edge(x,y) & edge(x,z) => y = z",
                     [](const GraphView& v, VV& out) {
                         for (EntityId e : v.entities)
                             if (v.out_degree(e) > 1)
                                 out.push_back({"", "node '" + v.label(e) + "' has out-degree " +
                                                        std::to_string(v.out_degree(e))});
                     }});
    rules.push_back({"paths.acyclic", "structural", "connected(x,y) => x != y",
                     [](const GraphView& v, VV& out) {
                         // colour DFS over the directed edges
                         std::map<EntityId, std::vector<EntityId>> adj;
                         for (const Triple& t : v.graph->triples())
                             adj[t.subject].push_back(t.object);
                         std::map<EntityId, int> colour;  // 0 new, 1 active, 2 done
                         std::function<bool(EntityId)> dfs = [&](EntityId u) {
                             colour[u] = 1;
                             for (EntityId w : adj[u]) {
                                 if (colour[w] == 1) return true;
                                 if (colour[w] == 0 && dfs(w)) return true;
                             }
                             colour[u] = 2;
                             return false;
                         };
                         for (EntityId e : v.entities)
                             if (colour[e] == 0 && dfs(e)) {
                                 out.push_back({"", "directed cycle through '" + v.label(e) + "'"});
                                 return;
                             }
                     }});
    rules.push_back({"paths.root_reaches_all", "connectivity",
                     "root(x) => connected(x,y) | x = y for every y",
                     [](const GraphView& v, VV& out) {
                         std::map<EntityId, std::vector<EntityId>> adj;
                         for (const Triple& t : v.graph->triples())
                             adj[t.subject].push_back(t.object);
                         for (EntityId root : v.entities) {
                             if (v.in_degree(root) != 0) continue;
                             std::set<EntityId> seen{root};
                             std::vector<EntityId> stack{root};
                             while (!stack.empty()) {
                                 EntityId u = stack.back();
                                 stack.pop_back();
                                 for (EntityId w : adj[u])
                                     if (seen.insert(w).second) stack.push_back(w);
                             }
                             if (seen.size() != v.entities.size())
                                 out.push_back({"", "root '" + v.label(root) +
                                                        "' does not reach every node"});
                         }
                     }});
    rules.push_back(edge_count_rule("paths", 3));
    return stamp(std::move(rules));
}

// --- syn-types ---------------------------------------------------------------

enum class TypedKind { Language, Country, City, Unknown };

inline TypedKind typed_kind(std::string_view label) {
    static const std::unordered_map<std::string_view, TypedKind> kTypes = [] {
        std::unordered_map<std::string_view, TypedKind> m;
        for (const char* e : lex::kTypeLanguages) m.emplace(e, TypedKind::Language);
        for (const char* e : lex::kTypeCountries) m.emplace(e, TypedKind::Country);
        for (const char* e : lex::kTypeCities) m.emplace(e, TypedKind::City);
        return m;
    }();
    auto it = kTypes.find(label);
    return it == kTypes.end() ? TypedKind::Unknown : it->second;
}

inline const char* typed_kind_name(TypedKind k) {
    switch (k) {
        case TypedKind::Language: return "language";
        case TypedKind::Country: return "country";
        case TypedKind::City: return "city";
        default: return "unknown";
    }
}

inline std::vector<Rule> make_types_rules() {
    using VV = std::vector<Violation>;
    std::vector<Rule> rules;

    rules.push_back({"types.entity_domain", "typing",
                     "every node is a known language, country or city "
                     "(each label carries exactly one type)",
                     [](const GraphView& v, VV& out) {
                         for (EntityId e : v.entities)
                             if (typed_kind(v.label(e)) == TypedKind::Unknown)
                                 out.push_back({"", "unknown entity '" + v.label(e) + "'"});
                     }});
    auto relation_rule = [](std::string id, std::string text, std::string_view relation,
                            TypedKind head, TypedKind tail) {
        return Rule{std::move(id), "typing", std::move(text),
                    [relation, head, tail](const GraphView& v, VV& out) {
                        for (const Triple& t : v.graph->triples()) {
                            if (v.rel(t.relation) != relation) continue;
                            TypedKind hk = typed_kind(v.label(t.subject));
                            TypedKind tk = typed_kind(v.label(t.object));
                            if ((hk != head && hk != TypedKind::Unknown) ||
                                (tk != tail && tk != TypedKind::Unknown))
                                out.push_back({"", v.triple_text(t) + " (" + typed_kind_name(hk) +
                                                       " x " + typed_kind_name(tk) + ")"});
                        }
                    }};
    };
    rules.push_back(relation_rule("types.type_spoken_in",
                                  "spoken_in(x,y) => language(x) & country(y)", "spoken_in",
                                  TypedKind::Language, TypedKind::Country));
    rules.push_back(relation_rule("types.type_could_be_part_of",
                                  "could_be_part_of(x,y) => city(x) & country(y)",
                                  "could_be_part_of", TypedKind::City, TypedKind::Country));
    rules.push_back({"types.type_same_type_as", "typing",
                     "same_type_as(x,y) => x and y have the same type",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) != "same_type_as") continue;
                             TypedKind hk = typed_kind(v.label(t.subject));
                             TypedKind tk = typed_kind(v.label(t.object));
                             if (hk == TypedKind::Unknown || tk == TypedKind::Unknown) continue;
                             if (hk != tk)
                                 out.push_back({"", v.triple_text(t) + " (" +
                                                        typed_kind_name(hk) + " x " +
                                                        typed_kind_name(tk) + ")"});
                         }
                     }});
    rules.push_back({"types.relation_domain", "structural",
                     "edges use spoken_in, could_be_part_of or same_type_as only",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             const std::string& r = v.rel(t.relation);
                             if (r != "spoken_in" && r != "could_be_part_of" &&
                                 r != "same_type_as")
                                 out.push_back({"", "relation '" + r + "'"});
                         }
                     }});
    rules.push_back(edge_count_rule("types", 3));
    return stamp(std::move(rules));
}

// --- syn-tipr ----------------------------------------------------------------

enum class TiprKind { Academic, Role, Time, Name, Year, Unknown };

inline TiprKind tipr_kind(std::string_view label) {
    static const std::unordered_map<std::string_view, TiprKind> kTypes = [] {
        std::unordered_map<std::string_view, TiprKind> m;
        for (const char* e : lex::kTiprNames) m.emplace(e, TiprKind::Name);
        for (const char* e : lex::kTiprRoles) m.emplace(e, TiprKind::Role);
        m.emplace(lex::kAcademicNode, TiprKind::Academic);
        m.emplace(lex::kTimeNode, TiprKind::Time);
        return m;
    }();
    if (auto it = kTypes.find(label); it != kTypes.end()) return it->second;
    if (auto year = parse_int(label);
        year && *year >= lex::kTiprYearMin && *year <= lex::kTiprYearMax)
        return TiprKind::Year;
    return TiprKind::Unknown;
}

inline const char* tipr_kind_name(TiprKind k) {
    switch (k) {
        case TiprKind::Academic: return "academic";
        case TiprKind::Role: return "role";
        case TiprKind::Time: return "time";
        case TiprKind::Name: return "name";
        case TiprKind::Year: return "year";
        default: return "unknown";
    }
}

inline std::vector<Rule> make_tipr_rules() {
    using VV = std::vector<Violation>;
    std::vector<Rule> rules;

    rules.push_back({"tipr.entity_domain", "typing",
                     "every node is a known name, role, year, _academic or _time "
                     "(each label carries exactly one type)",
                     [](const GraphView& v, VV& out) {
                         for (EntityId e : v.entities)
                             if (tipr_kind(v.label(e)) == TiprKind::Unknown)
                                 out.push_back({"", "unknown entity '" + v.label(e) + "'"});
                     }});
    auto relation_rule = [](std::string id, std::string text, std::string_view relation,
                            TiprKind head, TiprKind tail) {
        return Rule{std::move(id), "typing", std::move(text),
                    [relation, head, tail](const GraphView& v, VV& out) {
                        for (const Triple& t : v.graph->triples()) {
                            if (v.rel(t.relation) != relation) continue;
                            TiprKind hk = tipr_kind(v.label(t.subject));
                            TiprKind tk = tipr_kind(v.label(t.object));
                            if ((hk != head && hk != TiprKind::Unknown) ||
                                (tk != tail && tk != TiprKind::Unknown))
                                out.push_back({"", v.triple_text(t) + " (" + tipr_kind_name(hk) +
                                                       " x " + tipr_kind_name(tk) + ")"});
                        }
                    }};
    };
    rules.push_back(relation_rule("tipr.type_has_name", "has_name(x,y) => academic(x) & name(y)",
                                  "has_name", TiprKind::Academic, TiprKind::Name));
    rules.push_back(relation_rule("tipr.type_has_role", "has_role(x,y) => academic(x) & role(y)",
                                  "has_role", TiprKind::Academic, TiprKind::Role));
    rules.push_back(relation_rule("tipr.type_has_time", "has_time(x,y) => academic(x) & time(y)",
                                  "has_time", TiprKind::Academic, TiprKind::Time));
    rules.push_back(relation_rule("tipr.type_start_year", "start_year(x,y) => time(x) & year(y)",
                                  "start_year", TiprKind::Time, TiprKind::Year));
    rules.push_back(relation_rule("tipr.type_end_year", "end_year(x,y) => time(x) & year(y)",
                                  "end_year", TiprKind::Time, TiprKind::Year));
    rules.push_back({"tipr.irreflexive", "structural", "no relation may relate a node to itself",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (t.subject == t.object)
                                 out.push_back({"", v.triple_text(t)});
                     }});
    rules.push_back({"tipr.temporal_order", "temporal",
                     "start_year(x,y) & end_year(x,z) => y <= z",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& a : v.graph->triples()) {
                             if (v.rel(a.relation) != "start_year") continue;
                             auto start = parse_int(v.label(a.object));
                             if (!start) continue;
                             for (const Triple& b : v.graph->triples()) {
                                 if (v.rel(b.relation) != "end_year" || b.subject != a.subject)
                                     continue;
                                 auto end = parse_int(v.label(b.object));
                                 if (end && *start > *end)
                                     out.push_back({"", "interval '" + v.label(a.subject) +
                                                            "' starts " + v.label(a.object) +
                                                            " after end " + v.label(b.object)});
                             }
                         }
                     }});
    rules.push_back(edge_count_rule("tipr", 5));
    return stamp(std::move(rules));
}

// --- wd-movies ---------------------------------------------------------------

inline std::vector<Rule> make_movies_rules() {
    using VV = std::vector<Violation>;
    std::vector<Rule> rules;
    const std::string movie = lex::kMovieNode;

    auto find_movie = [movie](const GraphView& v) -> std::optional<EntityId> {
        for (EntityId e : v.entities)
            if (v.label(e) == movie) return e;
        return std::nullopt;
    };

    rules.push_back({"movies.relation_domain", "structural",
                     "connected(x,y) <=> has_director(x,y) | has_actor(x,y) | has_genre(x,y)",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             const std::string& r = v.rel(t.relation);
                             if (r != "has_director" && r != "has_actor" && r != "has_genre")
                                 out.push_back({"", "relation '" + r + "'"});
                         }
                     }});
    rules.push_back({"movies.movie_node", "structural", "the _movie node is present",
                     [find_movie](const GraphView& v, VV& out) {
                         if (!find_movie(v)) out.push_back({"", "no _movie node in graph"});
                     }});
    rules.push_back({"movies.edges_from_movie", "structural",
                     "every edge leaves the _movie node; non-movie nodes are never connected",
                     [movie](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (v.label(t.subject) != movie)
                                 out.push_back({"", v.triple_text(t)});
                     }});
    rules.push_back({"movies.no_edge_into_movie", "structural",
                     "no edge points at the _movie node",
                     [movie](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (v.label(t.object) == movie)
                                 out.push_back({"", v.triple_text(t)});
                     }});
    auto exists_rule = [](std::string id, std::string text, std::string relation) {
        return Rule{std::move(id), "cardinality", std::move(text),
                    [relation](const GraphView& v, VV& out) {
                        for (const Triple& t : v.graph->triples())
                            if (v.rel(t.relation) == relation) return;
                        out.push_back({"", "no " + relation + " edge"});
                    }};
    };
    rules.push_back(exists_rule("movies.has_director", "at least one director", "has_director"));
    rules.push_back(exists_rule("movies.has_actor", "at least one actor", "has_actor"));
    rules.push_back(exists_rule("movies.has_genre", "at least one genre", "has_genre"));
    rules.push_back({"movies.person_genre_disjoint", "typing",
                     "no entity is both a cast/director target and a genre target",
                     [](const GraphView& v, VV& out) {
                         std::set<EntityId> people, genres;
                         for (const Triple& t : v.graph->triples()) {
                             const std::string& r = v.rel(t.relation);
                             if (r == "has_director" || r == "has_actor") people.insert(t.object);
                             if (r == "has_genre") genres.insert(t.object);
                         }
                         for (EntityId e : people)
                             if (genres.count(e))
                                 out.push_back({"", "'" + v.label(e) +
                                                        "' used as both person and genre"});
                     }});
    return stamp(std::move(rules));
}

// --- wd-articles -------------------------------------------------------------

enum class ArticleKind { Article, AuthorPos, Author, Subject, Ordinal, Iri, Name };

inline ArticleKind article_kind(std::string_view label) {
    auto starts = [&](std::string_view p) { return label.substr(0, p.size()) == p; };
    if (label == lex::kArticleNode) return ArticleKind::Article;
    if (starts("_authorpos")) return ArticleKind::AuthorPos;
    if (starts("_author")) return ArticleKind::Author;
    if (starts("_subject")) return ArticleKind::Subject;
    if (starts("ordinal_")) return ArticleKind::Ordinal;
    if (starts("http://") || starts("https://")) return ArticleKind::Iri;
    return ArticleKind::Name;
}

inline const char* article_kind_name(ArticleKind k) {
    switch (k) {
        case ArticleKind::Article: return "article";
        case ArticleKind::AuthorPos: return "author_pos";
        case ArticleKind::Author: return "author";
        case ArticleKind::Subject: return "subject";
        case ArticleKind::Ordinal: return "ordinal";
        case ArticleKind::Iri: return "iri";
        default: return "name";
    }
}

// The article node: the `_article` entity when present, otherwise the unique
// source of has_author/cites/has_subject edges.
inline std::optional<EntityId> resolve_article_node(const GraphView& v) {
    for (EntityId e : v.entities)
        if (v.label(e) == lex::kArticleNode) return e;
    std::set<EntityId> sources;
    for (const Triple& t : v.graph->triples()) {
        const std::string& r = v.rel(t.relation);
        if (r == "has_author" || r == "cites" || r == "has_subject") sources.insert(t.subject);
    }
    if (sources.size() == 1) return *sources.begin();
    return std::nullopt;
}

inline std::vector<Rule> make_articles_rules() {
    using VV = std::vector<Violation>;
    std::vector<Rule> rules;

    rules.push_back({"articles.relation_domain", "structural",
                     "connected(x,y) <=> has_author | has_name | has_order | cites | "
                     "has_subject | subclass_of",
                     [](const GraphView& v, VV& out) {
                         static const std::unordered_set<std::string_view> kRels(
                             lex::kArticleRelations.begin(), lex::kArticleRelations.end());
                         for (const Triple& t : v.graph->triples())
                             if (!kRels.count(v.rel(t.relation)))
                                 out.push_back({"", "relation '" + v.rel(t.relation) + "'"});
                     }});
    rules.push_back({"articles.has_author", "cardinality", "at least one author",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (v.rel(t.relation) == "has_author") return;
                         out.push_back({"", "no has_author edge"});
                     }});
    rules.push_back({"articles.article_node", "structural",
                     "has_author/cites/has_subject edges share one source, typed article or iri",
                     [](const GraphView& v, VV& out) {
                         auto article = resolve_article_node(v);
                         if (!article) {
                             out.push_back({"", "article node unresolved"});
                             return;
                         }
                         ArticleKind k = article_kind(v.label(*article));
                         if (k != ArticleKind::Article && k != ArticleKind::Iri)
                             out.push_back({"", "article node '" + v.label(*article) +
                                                    "' typed " + article_kind_name(k)});
                         for (const Triple& t : v.graph->triples()) {
                             const std::string& r = v.rel(t.relation);
                             if ((r == "has_author" || r == "cites" || r == "has_subject") &&
                                 t.subject != *article)
                                 out.push_back({"", v.triple_text(t)});
                         }
                     }});
    rules.push_back({"articles.authorpos_shape", "structural",
                     "author_pos(x) <=> exactly one has_name(x,.) and one has_order(x,.)",
                     [](const GraphView& v, VV& out) {
                         std::set<EntityId> authorpos;
                         for (const Triple& t : v.graph->triples())
                             if (v.rel(t.relation) == "has_author") authorpos.insert(t.object);
                         for (EntityId e : v.entities)
                             if (article_kind(v.label(e)) == ArticleKind::AuthorPos)
                                 authorpos.insert(e);
                         for (EntityId e : authorpos) {
                             if (article_kind(v.label(e)) != ArticleKind::AuthorPos) {
                                 out.push_back({"", "author target '" + v.label(e) +
                                                        "' typed " +
                                                        article_kind_name(article_kind(v.label(e)))});
                                 continue;
                             }
                             int names = 0, orders = 0;
                             for (const Triple& t : v.graph->triples()) {
                                 if (t.subject != e) continue;
                                 names += (v.rel(t.relation) == "has_name");
                                 orders += (v.rel(t.relation) == "has_order");
                             }
                             if (names != 1 || orders != 1)
                                 out.push_back({"", "'" + v.label(e) + "' has " +
                                                        std::to_string(names) + " names and " +
                                                        std::to_string(orders) + " orders"});
                         }
                     }});
    rules.push_back({"articles.type_has_name", "typing",
                     "has_name(x,y) => author_pos(x) & (author(y) | name(y) | iri(y))",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) != "has_name") continue;
                             ArticleKind hk = article_kind(v.label(t.subject));
                             ArticleKind tk = article_kind(v.label(t.object));
                             if (hk != ArticleKind::AuthorPos ||
                                 (tk != ArticleKind::Author && tk != ArticleKind::Name &&
                                  tk != ArticleKind::Iri))
                                 out.push_back({"", v.triple_text(t)});
                         }
                     }});
    rules.push_back({"articles.type_has_order", "typing",
                     "has_order(x,y) => author_pos(x) & ordinal(y)",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) != "has_order") continue;
                             if (article_kind(v.label(t.subject)) != ArticleKind::AuthorPos ||
                                 article_kind(v.label(t.object)) != ArticleKind::Ordinal)
                                 out.push_back({"", v.triple_text(t)});
                         }
                     }});
    rules.push_back({"articles.cites_shape", "typing", "cites(x,y) => iri(y)",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (v.rel(t.relation) == "cites" &&
                                 article_kind(v.label(t.object)) != ArticleKind::Iri)
                                 out.push_back({"", v.triple_text(t)});
                     }});
    rules.push_back({"articles.subject_shape", "typing",
                     "has_subject(x,y) => subject(y) | iri(y)",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) != "has_subject") continue;
                             ArticleKind k = article_kind(v.label(t.object));
                             if (k != ArticleKind::Subject && k != ArticleKind::Iri)
                                 out.push_back({"", v.triple_text(t)});
                         }
                     }});
    rules.push_back({"articles.subclass_shape", "typing",
                     "subclass_of(x,y) => (subject(x)|iri(x)) & (subject(y)|iri(y))",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) != "subclass_of") continue;
                             ArticleKind hk = article_kind(v.label(t.subject));
                             ArticleKind tk = article_kind(v.label(t.object));
                             bool ok = (hk == ArticleKind::Subject || hk == ArticleKind::Iri) &&
                                       (tk == ArticleKind::Subject || tk == ArticleKind::Iri);
                             if (!ok) out.push_back({"", v.triple_text(t)});
                         }
                     }});
    rules.push_back({"articles.subclass_anchor", "connectivity",
                     "every subclass_of source is reachable from a has_subject target "
                     "via subclass_of edges",
                     [](const GraphView& v, VV& out) {
                         std::set<EntityId> anchored;
                         for (const Triple& t : v.graph->triples())
                             if (v.rel(t.relation) == "has_subject") anchored.insert(t.object);
                         // reflexive-transitive closure over subclass_of
                         bool grew = true;
                         while (grew) {
                             grew = false;
                             for (const Triple& t : v.graph->triples())
                                 if (v.rel(t.relation) == "subclass_of" &&
                                     anchored.count(t.subject) && !anchored.count(t.object))
                                     grew = anchored.insert(t.object).second;
                         }
                         for (const Triple& t : v.graph->triples())
                             if (v.rel(t.relation) == "subclass_of" && !anchored.count(t.subject))
                                 out.push_back({"", v.triple_text(t)});
                     }});
    rules.push_back({"articles.no_self_loop", "structural", "no edge relates a node to itself",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& t : v.graph->triples())
                             if (t.subject == t.object) out.push_back({"", v.triple_text(t)});
                     }});
    rules.push_back({"articles.antisymmetric", "structural",
                     "connected(x,y) => not connected(y,x), unless the reverse edge is cites",
                     [](const GraphView& v, VV& out) {
                         for (const Triple& a : v.graph->triples())
                             for (const Triple& b : v.graph->triples())
                                 if (a.subject == b.object && a.object == b.subject &&
                                     a.subject != a.object && v.rel(b.relation) != "cites")
                                     out.push_back({"", v.triple_text(a) + " vs " +
                                                            v.triple_text(b)});
                     }});
    rules.push_back({"articles.ordinal_sequence", "cardinality",
                     "author ordinals are exactly ordinal_001..ordinal_N for N authors",
                     [](const GraphView& v, VV& out) {
                         std::set<EntityId> authorpos;
                         std::vector<int> numbers;
                         for (const Triple& t : v.graph->triples()) {
                             if (v.rel(t.relation) == "has_author") authorpos.insert(t.object);
                             if (v.rel(t.relation) == "has_order")
                                 if (auto n = ordinal_number(v.label(t.object)))
                                     numbers.push_back(*n);
                         }
                         std::sort(numbers.begin(), numbers.end());
                         bool consecutive = numbers.size() == authorpos.size();
                         for (size_t i = 0; consecutive && i < numbers.size(); ++i)
                             consecutive = numbers[i] == static_cast<int>(i) + 1;
                         if (!consecutive) {
                             std::string w = "ordinals {";
                             for (size_t i = 0; i < numbers.size(); ++i)
                                 w += (i ? "," : "") + std::to_string(numbers[i]);
                             w += "} for " + std::to_string(authorpos.size()) + " authors";
                             out.push_back({"", w});
                         }
                     }});
    return stamp(std::move(rules));
}

}  // namespace rules_detail

inline const RuleSet& ruleset_for(DatasetId id) {
    static const RuleSet paths(DatasetId::SynPaths, rules_detail::make_paths_rules());
    static const RuleSet types(DatasetId::SynTypes, rules_detail::make_types_rules());
    static const RuleSet tipr(DatasetId::SynTipr, rules_detail::make_tipr_rules());
    static const RuleSet movies(DatasetId::WdMovies, rules_detail::make_movies_rules());
    static const RuleSet articles(DatasetId::WdArticles, rules_detail::make_articles_rules());
    switch (id) {
        case DatasetId::SynPaths: return paths;
        case DatasetId::SynTypes: return types;
        case DatasetId::SynTipr: return tipr;
        case DatasetId::WdMovies: return movies;
        case DatasetId::WdArticles: return articles;
    }
    throw ContractError("bad dataset id");
}

}  // namespace sgbench
