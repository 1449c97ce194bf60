#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "sgbench/canonical.hpp"
#include "sgbench/rng.hpp"
#include "sgbench/tsv.hpp"
#include "sgbench/types.hpp"

using namespace sgbench;

namespace {

Subgraph make_graph(std::initializer_list<Triple> ts) {
    return Subgraph::from_triples(std::vector<Triple>(ts));
}

// Independent connectivity oracle: union-find over undirected edges.
bool connected_union_find(const Subgraph& g) {
    if (g.empty()) return false;
    std::vector<EntityId> nodes = g.entities();
    std::vector<size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto index_of = [&](EntityId e) {
        return static_cast<size_t>(std::lower_bound(nodes.begin(), nodes.end(), e) - nodes.begin());
    };
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Triple& t : g.triples()) parent[find(index_of(t.subject))] = find(index_of(t.object));
    size_t root = find(0);
    for (size_t i = 1; i < nodes.size(); ++i)
        if (find(i) != root) return false;
    return true;
}

}  // namespace

TEST_CASE("vocabulary assigns dense ids in first-seen order") {
    Vocabulary v;
    CHECK(v.add_entity("a") == 0);
    CHECK(v.add_entity("b") == 1);
    CHECK(v.add_entity("a") == 0);
    CHECK(v.add_relation("r") == 0);
    CHECK(v.n_entities() == 2);
    CHECK(v.entity_label(1) == "b");
    CHECK(!v.entity_id("c").has_value());
    v.seal();
    CHECK_THROWS_AS(v.add_entity("c"), LookupError);
    CHECK(v.add_entity("b") == 1);  // known labels still resolve when sealed
}

TEST_CASE("existential labels are the underscore-prefixed ones") {
    Vocabulary v;
    auto movie = v.add_entity("_movie");
    auto actor = v.add_entity("Antonio_Banderas");
    CHECK(v.is_existential(movie));
    CHECK(!v.is_existential(actor));
}

TEST_CASE("subgraph rejects duplicate triples") {
    Subgraph g;
    g.add({0, 0, 1});
    CHECK_THROWS_AS(g.add({0, 0, 1}), IntegrityError);
    CHECK_THROWS_AS(Subgraph::from_triples({{0, 0, 1}, {1, 0, 2}, {0, 0, 1}}), IntegrityError);
}

TEST_CASE("parse: empty stream is the identity case") {
    ParsedGraphs parsed = parse_subgraph_text("");
    CHECK(parsed.graphs.empty());
    CHECK(parsed.vocabulary.n_entities() == 0);
}

TEST_CASE("parse: three lines form one 3-triple subgraph") {
    std::string text =
        "Nieuwegein\tdrive_to\tLelystad\n"
        "Lelystad\tdrive_to\tIJmuiden\n"
        "IJmuiden\tcycle_to\tZaanstad\n";
    ParsedGraphs parsed = parse_subgraph_text(text);
    REQUIRE(parsed.graphs.size() == 1);
    CHECK(parsed.graphs[0].size() == 3);
    CHECK(parsed.vocabulary.n_entities() == 4);
    CHECK(parsed.vocabulary.n_relations() == 2);
    CHECK(parsed.vocabulary.entity_label(0) == "Nieuwegein");
}

TEST_CASE("parse: blank line separates subgraphs; round-trip is byte-exact") {
    std::string text =
        "a\tr\tb\n"
        "\n"
        "b\tr\tc\n";
    ParsedGraphs parsed = parse_subgraph_text(text);
    REQUIRE(parsed.graphs.size() == 2);
    CHECK(parsed.graphs[0].size() == 1);
    CHECK(parsed.graphs[1].size() == 1);
    CHECK(serialize_subgraphs(parsed.graphs, parsed.vocabulary) == text);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_subgraph_text("a\tr\n"), ParseError);
    CHECK_THROWS_AS(parse_subgraph_text("a\tr\tb\tc\n"), ParseError);
    try {
        parse_subgraph_text("a\tr\tb\nbroken line\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_subgraph_text("a\tr\tb\na\tr\tb\n"), IntegrityError);
}

TEST_CASE("parse against a sealed vocabulary rejects unknown labels") {
    Vocabulary vocab;
    vocab.add_entity("a");
    vocab.add_entity("b");
    vocab.add_relation("r");
    vocab.seal();
    CHECK_THROWS_AS(parse_subgraph_text("a\tr\tz\n", vocab), LookupError);
    ParsedGraphs ok = parse_subgraph_text("b\tr\ta\n", vocab);
    CHECK(ok.graphs.size() == 1);
}

TEST_CASE("labels get interior whitespace replaced on ingestion") {
    ParsedGraphs parsed = parse_subgraph_text("_movie\thas_genre\tcomedy film\n");
    CHECK(parsed.vocabulary.entity_label(1) == "comedy_film");
}

TEST_CASE("round-trip property over random well-formed files") {
    Pcg32 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        Vocabulary vocab;
        for (int e = 0; e < 12; ++e) vocab.add_entity("e" + std::to_string(e));
        for (int r = 0; r < 3; ++r) vocab.add_relation("r" + std::to_string(r));
        std::vector<Subgraph> graphs(1 + rng.below(5));
        for (Subgraph& g : graphs) {
            size_t want = 1 + rng.below(6);
            while (g.size() < want) {
                Triple t{static_cast<EntityId>(rng.below(12)),
                         static_cast<RelationId>(rng.below(3)),
                         static_cast<EntityId>(rng.below(12))};
                if (!g.contains(t)) g.add(t);
            }
        }
        std::string text = serialize_subgraphs(graphs, vocab);
        ParsedGraphs parsed = parse_subgraph_text(text, vocab);
        REQUIRE(parsed.graphs.size() == graphs.size());
        CHECK(serialize_subgraphs(parsed.graphs, parsed.vocabulary) == text);
    }
}

TEST_CASE("gzip files read back transparently") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sgbench_core_gz";
    fs::create_directories(dir);
    std::string text = "a\tr\tb\n\nb\tr\tc\n";
    write_file_bytes(dir / "x.tsv.gz", text);
    CHECK(read_file_bytes(dir / "x.tsv.gz") == text);
    write_file_bytes(dir / "x.tsv", text);
    CHECK(read_file_bytes(dir / "x.tsv") == text);
    ParsedGraphs parsed = parse_subgraph_file(dir / "x.tsv.gz");
    CHECK(parsed.graphs.size() == 2);
    fs::remove_all(dir);
}

TEST_CASE("canonical key is permutation-invariant") {
    Subgraph a = make_graph({{0, 0, 1}, {1, 0, 2}});
    Subgraph b = make_graph({{1, 0, 2}, {0, 0, 1}});
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(Subgraph{}).empty());
    CHECK(canonical_form(a) != canonical_form(make_graph({{0, 0, 1}})));
}

TEST_CASE("1000 random permutations of a 5-triple graph share one key") {
    std::vector<Triple> base{{0, 0, 1}, {1, 1, 2}, {2, 0, 3}, {3, 1, 4}, {0, 1, 4}};
    Pcg32 rng(11);
    std::set<CanonicalKey> keys;
    for (int i = 0; i < 1000; ++i) {
        std::vector<Triple> shuffled = base;
        for (size_t j = shuffled.size(); j > 1; --j)
            std::swap(shuffled[j - 1], shuffled[rng.below(static_cast<uint32_t>(j))]);
        keys.insert(canonical_form(Subgraph::from_triples(shuffled)));
    }
    CHECK(keys.size() == 1);
}

TEST_CASE("connectivity basics") {
    CHECK(is_connected(make_graph({{0, 0, 1}, {1, 0, 2}})));
    CHECK(!is_connected(make_graph({{0, 0, 1}, {2, 0, 3}})));
    CHECK(!is_connected(Subgraph{}));
    CHECK(is_connected(make_graph({{5, 0, 5}})));  // single node, self-loop
}

TEST_CASE("connectivity agrees with a union-find oracle on random graphs") {
    Pcg32 rng(13);
    for (int iter = 0; iter < 300; ++iter) {
        Subgraph g;
        size_t want = 1 + rng.below(12);
        while (g.size() < want) {
            Triple t{static_cast<EntityId>(rng.below(10)), 0,
                     static_cast<EntityId>(rng.below(10))};
            if (!g.contains(t)) g.add(t);
        }
        CHECK(is_connected(g) == connected_union_find(g));
    }
}

TEST_CASE("novelty against a reference key set") {
    std::vector<Subgraph> corpus;
    for (int i = 0; i < 20; ++i)
        corpus.push_back(make_graph({{i, 0, i + 1}, {i + 1, 1, i + 2}}));
    KeySet reference = build_key_set(corpus);

    // copied from the corpus -> not novel
    CHECK(!is_novel(corpus[3], reference));
    // one relation changed -> novel
    CHECK(is_novel(make_graph({{3, 1, 4}, {4, 1, 5}}), reference));

    // exhaustive agreement with naive set membership
    for (const Subgraph& g : corpus) {
        bool naive = false;
        for (const Subgraph& h : corpus)
            if (canonical_form(g) == canonical_form(h)) naive = true;
        CHECK(is_novel(g, reference) == !naive);
    }
}

TEST_CASE("novelty depends only on the canonical key") {
    Subgraph g = make_graph({{0, 0, 1}, {1, 0, 2}});
    Subgraph permuted = make_graph({{1, 0, 2}, {0, 0, 1}});
    KeySet reference{canonical_form(g)};
    CHECK(!is_novel(permuted, reference));
}

TEST_CASE("sidecar id maps round-trip") {
    Vocabulary vocab;
    vocab.add_entity("x");
    vocab.add_entity("_y");
    vocab.add_relation("r");
    std::string entities = serialize_id_map(vocab.entity_labels());
    CHECK(entities == "0\tx\n1\t_y\n");
    std::vector<std::string> labels = parse_id_map(entities);
    REQUIRE(labels.size() == 2);
    CHECK(labels[1] == "_y");
    CHECK_THROWS_AS(parse_id_map("1\tx\n"), ParseError);  // ids must be dense
}

TEST_CASE("pcg32 streams are deterministic and lane-independent") {
    Pcg32 a = derive_stream(42, 0, 7);
    Pcg32 b = derive_stream(42, 0, 7);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u32() == b.next_u32());

    Pcg32 c = derive_stream(42, 1, 7);
    Pcg32 d = derive_stream(43, 0, 7);
    bool all_same_c = true, all_same_d = true;
    Pcg32 fresh = derive_stream(42, 0, 7);
    for (int i = 0; i < 16; ++i) {
        uint32_t base = fresh.next_u32();
        all_same_c &= (c.next_u32() == base);
        all_same_d &= (d.next_u32() == base);
    }
    CHECK(!all_same_c);
    CHECK(!all_same_d);
}

TEST_CASE("pcg32 bounded draws are in range and roughly uniform") {
    Pcg32 rng(99);
    std::array<int, 7> counts{};
    for (int i = 0; i < 70000; ++i) counts[rng.below(7)]++;
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}
