#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <string>
#include <vector>

#include "sgbench/canonical.hpp"
#include "sgbench/rules.hpp"
#include "sgbench/tsv.hpp"

using namespace sgbench;

namespace {

struct LabelTriple {
    const char* s;
    const char* r;
    const char* o;
};

struct LabeledGraph {
    Vocabulary vocab;
    Subgraph graph;
};

LabeledGraph graph_of(std::initializer_list<LabelTriple> triples) {
    LabeledGraph out;
    for (const LabelTriple& t : triples)
        out.graph.add({out.vocab.add_entity(t.s), out.vocab.add_relation(t.r),
                       out.vocab.add_entity(t.o)});
    return out;
}

bool violates(const ValidityReport& report, std::string_view rule_id) {
    for (const Violation& v : report.violations)
        if (v.rule == rule_id) return true;
    return false;
}

// Independent syn-paths oracle: the graph is a directed path visiting four
// distinct nodes, checked by trying all node orderings.
bool simple_path_oracle(const Subgraph& g) {
    if (g.size() != 3) return false;
    std::vector<EntityId> nodes = g.entities();
    if (nodes.size() != 4) return false;
    std::sort(nodes.begin(), nodes.end());
    do {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            bool found = false;
            for (const Triple& t : g.triples())
                if (t.subject == nodes[i] && t.object == nodes[i + 1]) found = true;
            ok = found;
        }
        if (ok) return true;
    } while (std::next_permutation(nodes.begin(), nodes.end()));
    return false;
}

}  // namespace

TEST_CASE("rule ids are unique and every dataset has a rule set") {
    for (auto id : {DatasetId::SynPaths, DatasetId::SynTypes, DatasetId::SynTipr,
                    DatasetId::WdMovies, DatasetId::WdArticles}) {
        const RuleSet& rs = ruleset_for(id);
        std::set<std::string> ids;
        for (const Rule& r : rs.rules()) {
            CHECK(ids.insert(r.id).second);
            CHECK(!r.text.empty());
        }
        CHECK(rs.rules().size() >= 5);
    }
}

TEST_CASE("syn-paths: example path graph is valid") {
    auto [vocab, g] = graph_of({{"Nieuwegein", "drive_to", "Lelystad"},
                                {"Lelystad", "drive_to", "IJmuiden"},
                                {"IJmuiden", "cycle_to", "Zaanstad"}});
    ValidityReport report = ruleset_for(DatasetId::SynPaths).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("syn-paths: a 3-cycle violates the root and acyclicity rules") {
    auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                {"Gouda", "cycle_to", "Delft"},
                                {"Delft", "train_to", "Breda"}});
    ValidityReport report = ruleset_for(DatasetId::SynPaths).verify(g, vocab);
    CHECK(!report.valid);
    CHECK(violates(report, "paths.single_root"));
    CHECK(violates(report, "paths.acyclic"));
}

TEST_CASE("syn-paths: specific structural defects hit their rules") {
    const RuleSet& rs = ruleset_for(DatasetId::SynPaths);
    SECTION("fork violates out-degree") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                    {"Breda", "cycle_to", "Delft"},
                                    {"Delft", "train_to", "Assen"}});
        CHECK(violates(rs.verify(g, vocab), "paths.out_degree"));
    }
    SECTION("join violates in-degree") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                    {"Delft", "cycle_to", "Gouda"},
                                    {"Gouda", "train_to", "Assen"}});
        CHECK(violates(rs.verify(g, vocab), "paths.in_degree"));
    }
    SECTION("unknown city violates the entity domain") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Atlantis"},
                                    {"Atlantis", "drive_to", "Gouda"},
                                    {"Gouda", "cycle_to", "Delft"}});
        CHECK(violates(rs.verify(g, vocab), "paths.entity_domain"));
    }
    SECTION("wrong relation violates the relation domain") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                    {"Gouda", "fly_to", "Delft"},
                                    {"Delft", "cycle_to", "Assen"}});
        CHECK(violates(rs.verify(g, vocab), "paths.relation_domain"));
    }
    SECTION("two edges violate the edge count") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                    {"Gouda", "cycle_to", "Delft"}});
        CHECK(violates(rs.verify(g, vocab), "paths.edge_count"));
    }
    SECTION("disconnected pair misses a unique root") {
        auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                    {"Delft", "cycle_to", "Assen"}});
        ValidityReport report = rs.verify(g, vocab);
        CHECK(violates(report, "paths.single_root"));
        CHECK(violates(report, "paths.root_reaches_all"));
    }
}

TEST_CASE("syn-paths: verifier matches the brute-force oracle on all small graphs") {
    // All graphs over 4 fixed cities, 3 relations, and at most 3 edges.
    Vocabulary vocab;
    std::array<EntityId, 4> nodes{};
    const char* cities[4] = {"Breda", "Gouda", "Delft", "Assen"};
    for (int i = 0; i < 4; ++i) nodes[i] = vocab.add_entity(cities[i]);
    for (const char* r : {"cycle_to", "drive_to", "train_to"}) vocab.add_relation(r);

    std::vector<Triple> candidates;
    for (EntityId s : nodes)
        for (RelationId r = 0; r < 3; ++r)
            for (EntityId o : nodes) candidates.push_back({s, r, o});
    REQUIRE(candidates.size() == 48);

    const RuleSet& rs = ruleset_for(DatasetId::SynPaths);
    size_t checked = 0, valid_count = 0;
    auto check_graph = [&](const std::vector<Triple>& ts) {
        Subgraph g = Subgraph::from_triples(ts);
        bool expected = simple_path_oracle(g);
        bool got = rs.verify(g, vocab).valid;
        if (expected != got) {
            CAPTURE(serialize_subgraphs(std::vector<Subgraph>{g}, vocab));
            REQUIRE(expected == got);
        }
        ++checked;
        valid_count += got;
    };
    check_graph({});
    for (size_t i = 0; i < candidates.size(); ++i) {
        check_graph({candidates[i]});
        for (size_t j = i + 1; j < candidates.size(); ++j) {
            check_graph({candidates[i], candidates[j]});
            for (size_t k = j + 1; k < candidates.size(); ++k)
                check_graph({candidates[i], candidates[j], candidates[k]});
        }
    }
    CHECK(checked == 1 + 48 + 1128 + 17296);
    // 4! node orders x 3^3 relation choices
    CHECK(valid_count == 648);
}

TEST_CASE("syn-types: example graph is valid") {
    auto [vocab, g] = graph_of({{"Dutch", "same_type_as", "English"},
                                {"Budapest", "could_be_part_of", "United_Kingdom"},
                                {"Czech", "spoken_in", "Serbia"}});
    ValidityReport report = ruleset_for(DatasetId::SynTypes).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("syn-types: the paper's example graphs are edge-disconnected yet valid") {
    auto [vocab, g] = graph_of({{"Serbia", "same_type_as", "Spain"},
                                {"Paris", "could_be_part_of", "Norway"},
                                {"Dutch", "spoken_in", "Greece"}});
    CHECK(ruleset_for(DatasetId::SynTypes).verify(g, vocab).valid);
    CHECK(!is_connected(g));
}

TEST_CASE("syn-types: typing violations carry the right rule id") {
    const RuleSet& rs = ruleset_for(DatasetId::SynTypes);
    SECTION("spoken_in with city head") {
        auto [vocab, g] = graph_of({{"Budapest", "spoken_in", "Serbia"},
                                    {"Paris", "could_be_part_of", "Norway"},
                                    {"Dutch", "same_type_as", "Greek"}});
        CHECK(violates(rs.verify(g, vocab), "types.type_spoken_in"));
    }
    SECTION("could_be_part_of with language head") {
        auto [vocab, g] = graph_of({{"Dutch", "could_be_part_of", "Norway"},
                                    {"Czech", "spoken_in", "Serbia"},
                                    {"Rome", "same_type_as", "Oslo"}});
        CHECK(violates(rs.verify(g, vocab), "types.type_could_be_part_of"));
    }
    SECTION("same_type_as across types") {
        auto [vocab, g] = graph_of({{"Dutch", "same_type_as", "Norway"},
                                    {"Paris", "could_be_part_of", "Greece"},
                                    {"Czech", "spoken_in", "Serbia"}});
        CHECK(violates(rs.verify(g, vocab), "types.type_same_type_as"));
    }
    SECTION("unknown entity") {
        auto [vocab, g] = graph_of({{"Klingon", "spoken_in", "Serbia"},
                                    {"Paris", "could_be_part_of", "Greece"},
                                    {"Dutch", "same_type_as", "Czech"}});
        ValidityReport report = rs.verify(g, vocab);
        CHECK(violates(report, "types.entity_domain"));
        // unresolvable labels are a typing violation, not a crash or a
        // spurious relation-typing failure
        CHECK(!violates(report, "types.type_spoken_in"));
    }
}

TEST_CASE("syn-tipr: template graph is valid") {
    auto [vocab, g] = graph_of({{"_academic", "has_name", "Cleophas_Erős"},
                                {"_academic", "has_role", "masters_researcher"},
                                {"_academic", "has_time", "_time"},
                                {"_time", "start_year", "2016"},
                                {"_time", "end_year", "2018"}});
    ValidityReport report = ruleset_for(DatasetId::SynTipr).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("syn-tipr: start after end violates the temporal rule") {
    auto [vocab, g] = graph_of({{"_academic", "has_name", "Romana_Sitk"},
                                {"_academic", "has_role", "professor"},
                                {"_academic", "has_time", "_time"},
                                {"_time", "start_year", "2018"},
                                {"_time", "end_year", "2016"}});
    ValidityReport report = ruleset_for(DatasetId::SynTipr).verify(g, vocab);
    CHECK(!report.valid);
    CHECK(violates(report, "tipr.temporal_order"));
}

TEST_CASE("syn-tipr: equal start and end year is accepted") {
    auto [vocab, g] = graph_of({{"_academic", "has_name", "Romana_Sitk"},
                                {"_academic", "has_role", "professor"},
                                {"_academic", "has_time", "_time"},
                                {"_time", "start_year", "2000"},
                                {"_time", "end_year", "2000"}});
    CHECK(ruleset_for(DatasetId::SynTipr).verify(g, vocab).valid);
}

TEST_CASE("syn-tipr: typing and structure violations") {
    const RuleSet& rs = ruleset_for(DatasetId::SynTipr);
    SECTION("role in name position") {
        auto [vocab, g] = graph_of({{"_academic", "has_name", "professor"},
                                    {"_academic", "has_role", "postdoc"},
                                    {"_academic", "has_time", "_time"},
                                    {"_time", "start_year", "1990"},
                                    {"_time", "end_year", "1995"}});
        CHECK(violates(rs.verify(g, vocab), "tipr.type_has_name"));
    }
    SECTION("self-loop violates irreflexivity") {
        auto [vocab, g] = graph_of({{"_academic", "has_name", "Romana_Sitk"},
                                    {"_academic", "has_role", "professor"},
                                    {"_academic", "has_time", "_academic"},
                                    {"_time", "start_year", "1990"},
                                    {"_time", "end_year", "1995"}});
        ValidityReport report = rs.verify(g, vocab);
        CHECK(violates(report, "tipr.irreflexive"));
        CHECK(violates(report, "tipr.type_has_time"));
    }
    SECTION("year outside the lexicon range") {
        auto [vocab, g] = graph_of({{"_academic", "has_name", "Romana_Sitk"},
                                    {"_academic", "has_role", "professor"},
                                    {"_academic", "has_time", "_time"},
                                    {"_time", "start_year", "1890"},
                                    {"_time", "end_year", "1995"}});
        CHECK(violates(rs.verify(g, vocab), "tipr.entity_domain"));
    }
    SECTION("six edges violate the edge count") {
        auto [vocab, g] = graph_of({{"_academic", "has_name", "Romana_Sitk"},
                                    {"_academic", "has_name", "Drusus_Krejči"},
                                    {"_academic", "has_role", "professor"},
                                    {"_academic", "has_time", "_time"},
                                    {"_time", "start_year", "1990"},
                                    {"_time", "end_year", "1995"}});
        CHECK(violates(rs.verify(g, vocab), "tipr.edge_count"));
    }
}

TEST_CASE("wd-movies: example graph is valid") {
    auto [vocab, g] = graph_of({{"_movie", "has_director", "Albert_Brooks"},
                                {"_movie", "has_actor", "Kathryn_Harrold"},
                                {"_movie", "has_actor", "Albert_Brooks"},
                                {"_movie", "has_actor", "Bruno_Kirby"},
                                {"_movie", "has_genre", "comedy_film"}});
    ValidityReport report = ruleset_for(DatasetId::WdMovies).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("wd-movies: rule violations") {
    const RuleSet& rs = ruleset_for(DatasetId::WdMovies);
    SECTION("edge between non-movie nodes") {
        auto [vocab, g] = graph_of({{"_movie", "has_director", "Albert_Brooks"},
                                    {"_movie", "has_actor", "Bruno_Kirby"},
                                    {"_movie", "has_genre", "comedy_film"},
                                    {"Bruno_Kirby", "has_actor", "Albert_Brooks"}});
        CHECK(violates(rs.verify(g, vocab), "movies.edges_from_movie"));
    }
    SECTION("missing genre") {
        auto [vocab, g] = graph_of({{"_movie", "has_director", "Albert_Brooks"},
                                    {"_movie", "has_actor", "Bruno_Kirby"}});
        CHECK(violates(rs.verify(g, vocab), "movies.has_genre"));
    }
    SECTION("missing director") {
        auto [vocab, g] = graph_of({{"_movie", "has_actor", "Bruno_Kirby"},
                                    {"_movie", "has_genre", "comedy_film"}});
        CHECK(violates(rs.verify(g, vocab), "movies.has_director"));
    }
    SECTION("edge into the movie node") {
        auto [vocab, g] = graph_of({{"_movie", "has_director", "Albert_Brooks"},
                                    {"_movie", "has_actor", "Bruno_Kirby"},
                                    {"_movie", "has_genre", "comedy_film"},
                                    {"Albert_Brooks", "has_actor", "_movie"}});
        ValidityReport report = rs.verify(g, vocab);
        CHECK(violates(report, "movies.no_edge_into_movie"));
    }
    SECTION("person also used as genre") {
        auto [vocab, g] = graph_of({{"_movie", "has_director", "Albert_Brooks"},
                                    {"_movie", "has_actor", "Bruno_Kirby"},
                                    {"_movie", "has_genre", "Bruno_Kirby"}});
        CHECK(violates(rs.verify(g, vocab), "movies.person_genre_disjoint"));
    }
    SECTION("no movie node at all") {
        auto [vocab, g] = graph_of({{"Albert_Brooks", "has_actor", "Bruno_Kirby"}});
        CHECK(violates(rs.verify(g, vocab), "movies.movie_node"));
    }
}

namespace {

LabeledGraph example_article() {
    return graph_of({{"_article", "has_author", "_authorpos000"},
                     {"_authorpos000", "has_name", "_author000"},
                     {"_authorpos000", "has_order", "ordinal_001"},
                     {"_article", "has_author", "_authorpos001"},
                     {"_authorpos001", "has_name", "_author001"},
                     {"_authorpos001", "has_order", "ordinal_002"},
                     {"_article", "cites", "http://example.org/entity/Q25938995"},
                     {"_article", "has_subject", "http://example.org/entity/Q214781"},
                     {"http://example.org/entity/Q214781", "subclass_of",
                      "http://example.org/entity/Q413"}});
}

}  // namespace

TEST_CASE("wd-articles: example graph is valid") {
    auto [vocab, g] = example_article();
    ValidityReport report = ruleset_for(DatasetId::WdArticles).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("wd-articles: a deeper superclass chain stays anchored") {
    auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                {"_authorpos000", "has_name", "Jane_Doe"},
                                {"_authorpos000", "has_order", "ordinal_001"},
                                {"_article", "cites", "http://example.org/entity/Q1"},
                                {"_article", "has_subject", "_subject000"},
                                {"_subject000", "subclass_of", "http://example.org/entity/Q10"},
                                {"http://example.org/entity/Q10", "subclass_of",
                                 "http://example.org/entity/Q20"}});
    ValidityReport report = ruleset_for(DatasetId::WdArticles).verify(g, vocab);
    CAPTURE(report.to_text());
    CHECK(report.valid);
}

TEST_CASE("wd-articles: rule violations") {
    const RuleSet& rs = ruleset_for(DatasetId::WdArticles);
    SECTION("gapped ordinals {1,3}") {
        auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                    {"_authorpos000", "has_name", "_author000"},
                                    {"_authorpos000", "has_order", "ordinal_001"},
                                    {"_article", "has_author", "_authorpos001"},
                                    {"_authorpos001", "has_name", "_author001"},
                                    {"_authorpos001", "has_order", "ordinal_003"},
                                    {"_article", "cites", "http://example.org/e/Q1"}});
        CHECK(violates(rs.verify(g, vocab), "articles.ordinal_sequence"));
    }
    SECTION("ordinals starting at 000") {
        auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                    {"_authorpos000", "has_name", "_author000"},
                                    {"_authorpos000", "has_order", "ordinal_000"},
                                    {"_article", "cites", "http://example.org/e/Q1"}});
        CHECK(violates(rs.verify(g, vocab), "articles.ordinal_sequence"));
    }
    SECTION("authorpos with two names") {
        auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                    {"_authorpos000", "has_name", "_author000"},
                                    {"_authorpos000", "has_name", "Jane_Doe"},
                                    {"_authorpos000", "has_order", "ordinal_001"},
                                    {"_article", "cites", "http://example.org/e/Q1"}});
        CHECK(violates(rs.verify(g, vocab), "articles.authorpos_shape"));
    }
    SECTION("missing author") {
        auto [vocab, g] = graph_of({{"_article", "cites", "http://example.org/e/Q1"}});
        CHECK(violates(rs.verify(g, vocab), "articles.has_author"));
    }
    SECTION("cites a non-iri") {
        auto [vocab, g] = example_article();
        Subgraph bad = g;
        bad.add({*vocab.entity_id("_article"), *vocab.relation_id("cites"),
                 vocab.add_entity("plain_name")});
        CHECK(violates(rs.verify(bad, vocab), "articles.cites_shape"));
    }
    SECTION("unanchored subclass edge") {
        auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                    {"_authorpos000", "has_name", "_author000"},
                                    {"_authorpos000", "has_order", "ordinal_001"},
                                    {"_article", "cites", "http://example.org/e/Q1"},
                                    {"http://example.org/e/Q10", "subclass_of",
                                     "http://example.org/e/Q20"}});
        CHECK(violates(rs.verify(g, vocab), "articles.subclass_anchor"));
    }
    SECTION("has_author from a non-article source") {
        auto [vocab, g] = graph_of({{"_article", "has_author", "_authorpos000"},
                                    {"_authorpos000", "has_name", "_author000"},
                                    {"_authorpos000", "has_order", "ordinal_001"},
                                    {"_authorpos000", "has_author", "_authorpos001"},
                                    {"_authorpos001", "has_name", "_author001"},
                                    {"_authorpos001", "has_order", "ordinal_002"},
                                    {"_article", "cites", "http://example.org/e/Q1"}});
        CHECK(violates(rs.verify(g, vocab), "articles.article_node"));
    }
    SECTION("ordinal used as a name") {
        auto [vocab, g] = example_article();
        Subgraph bad;
        for (const Triple& t : g.triples()) {
            if (vocab.relation_label(t.relation) == "has_name" &&
                vocab.entity_label(t.subject) == "_authorpos000")
                bad.add({t.subject, t.relation, *vocab.entity_id("ordinal_001")});
            else
                bad.add(t);
        }
        CHECK(violates(rs.verify(bad, vocab), "articles.type_has_name"));
    }
    SECTION("self loop") {
        auto [vocab, g] = example_article();
        Subgraph bad = g;
        EntityId q = *vocab.entity_id("http://example.org/entity/Q214781");
        bad.add({q, *vocab.relation_id("subclass_of"), q});
        CHECK(violates(rs.verify(bad, vocab), "articles.no_self_loop"));
    }
}

TEST_CASE("verify is pure and rule-order independent") {
    auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                {"Gouda", "fly_to", "Atlantis"},
                                {"Delft", "cycle_to", "Breda"}});
    const RuleSet& rs = ruleset_for(DatasetId::SynPaths);
    ValidityReport a = rs.verify(g, vocab);
    ValidityReport b = rs.verify(g, vocab);
    REQUIRE(a.violations.size() == b.violations.size());
    for (size_t i = 0; i < a.violations.size(); ++i) {
        CHECK(a.violations[i].rule == b.violations[i].rule);
        CHECK(a.violations[i].witness == b.violations[i].witness);
    }
}

TEST_CASE("violation reporting is monotone under rule removal") {
    auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                {"Gouda", "cycle_to", "Delft"},
                                {"Delft", "train_to", "Breda"}});  // a cycle
    const RuleSet& full = ruleset_for(DatasetId::SynPaths);
    ValidityReport full_report = full.verify(g, vocab);
    REQUIRE(!full_report.valid);

    for (size_t drop = 0; drop < full.rules().size(); ++drop) {
        std::vector<Rule> kept;
        for (size_t i = 0; i < full.rules().size(); ++i)
            if (i != drop) kept.push_back(full.rules()[i]);
        RuleSet reduced(DatasetId::SynPaths, std::move(kept));
        ValidityReport reduced_report = reduced.verify(g, vocab);
        for (const Violation& v : reduced_report.violations)
            CHECK(v.rule != full.rules()[drop].id);
        size_t expected = 0;
        for (const Violation& v : full_report.violations)
            expected += (v.rule != full.rules()[drop].id);
        CHECK(reduced_report.violations.size() == expected);
    }
}

TEST_CASE("report serialises to text and json") {
    auto [vocab, g] = graph_of({{"Breda", "drive_to", "Gouda"},
                                {"Gouda", "cycle_to", "Delft"}});
    ValidityReport report = ruleset_for(DatasetId::SynPaths).verify(g, vocab);
    CHECK(report.to_text().find("paths.edge_count") != std::string::npos);
    nlohmann::json j = report.to_json();
    CHECK(j["valid"] == false);
    CHECK(!j["violations"].empty());

    auto [vocab2, ok] = graph_of({{"Nieuwegein", "drive_to", "Lelystad"},
                                  {"Lelystad", "drive_to", "IJmuiden"},
                                  {"IJmuiden", "cycle_to", "Zaanstad"}});
    CHECK(ruleset_for(DatasetId::SynPaths).verify(ok, vocab2).to_text() == "valid\n");
}
