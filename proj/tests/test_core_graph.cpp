#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "stallings/errors.hpp"
#include "stallings/lattice.hpp"

using namespace stallings;
using testutil::w;
using testutil::words;

TEST_CASE("build_core_graph on the main fixture") {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(testutil::example22_H(abc), abc);
    CHECK(H.num_vertices() == 4);
    CHECK(H.num_edges() == 5);
    CHECK(rank(H) == 2);
    for (const Word& g : testutil::example22_H(abc)) CHECK(contains(H, g));

    CHECK(contains(H, w("cA", abc)));
    CHECK_FALSE(contains(H, w("a", abc)));
    CHECK(contains(H, Word()));
}

TEST_CASE("one-loop and two-generator folds") {
    Alphabet a1({"a"});
    CoreGraph rose = build_core_graph({w("a", a1)}, a1);
    CHECK(rose.num_vertices() == 1);
    CHECK(rose.num_edges() == 1);
    CHECK(rank(rose) == 1);
    CHECK(serialize(rose) == "basepoint 0\nedge 0 0 a\n");

    Alphabet xy = Alphabet::xy();
    CoreGraph g = build_core_graph(words({"xy", "yx"}, xy), xy);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 4);
    CHECK(rank(g) == 2);
    CHECK(contains(g, w("xy", xy)));
    CHECK(contains(g, w("yx", xy)));
    CHECK_FALSE(contains(g, w("x", xy)));
}

TEST_CASE("empty generator set yields the trivial subgroup") {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph t = build_core_graph({}, abc);
    CHECK(t.num_vertices() == 1);
    CHECK(t.num_edges() == 0);
    CHECK(rank(t) == 0);
    CHECK(contains(t, Word()));
    CHECK_FALSE(contains(t, w("a", abc)));
}

TEST_CASE("fold identifies targets of equally labeled edges") {
    Alphabet xy = Alphabet::xy();
    GraphBuilder b(xy);
    int v0 = b.add_vertex(), v1 = b.add_vertex(), v2 = b.add_vertex();
    b.add_edge(v0, v1, 0);
    b.add_edge(v0, v2, 0);
    b.fold();
    int bp = 0;
    LabeledGraph g = b.snapshot(v0, &bp);
    CHECK(g.num_vertices == 2);
    CHECK(g.edges.size() == 1);
}

TEST_CASE("folding a folded graph is a fixed point") {
    Alphabet xy = Alphabet::xy();
    CoreGraph g = build_core_graph(words({"xy", "yx"}, xy), xy);
    GraphBuilder b(xy);
    for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex();
    for (const Edge& e : g.edges()) b.add_edge(e.origin, e.terminus, e.label);
    b.fold();
    int bp = 0;
    LabeledGraph lg = b.snapshot(0, &bp);
    CHECK(CoreGraph(lg, bp) == g);
}

TEST_CASE("wedge of two equal loops folds to one loop") {
    Alphabet xy = Alphabet::xy();
    CoreGraph g = build_core_graph(words({"xy", "xy"}, xy), xy);
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 2);
    CHECK(rank(g) == 1);
}

TEST_CASE("rank via Euler characteristic") {
    Alphabet abc = Alphabet::theta_target();
    // The two-vertex base graph X.
    CoreGraph X = deserialize("basepoint 0\nedge 0 1 a\nedge 0 1 b\nedge 0 1 c\n");
    CHECK(rank(X) == 2);

    CoreGraph hex = pullback(build_core_graph(testutil::example22_H(abc), abc),
                             build_core_graph(testutil::example22_K(abc), abc))
                        .meet;
    CHECK(hex.num_vertices() == 6);
    CHECK(rank(hex) == 1);

    Alphabet many({"a", "b", "c", "d"});
    CoreGraph rose = build_core_graph(words({"a", "b", "c", "d"}, many), many);
    CHECK(rank(rose) == 4);

    LabeledGraph disconnected;
    disconnected.alphabet = Alphabet({"a"});
    disconnected.num_vertices = 2;
    disconnected.edges = {{0, 0, 0}, {1, 1, 0}};
    CHECK_THROWS_AS(graph_rank(disconnected), domain_error);
}

TEST_CASE("serialize canonical form and round trip") {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph trivial = build_core_graph({}, abc);
    CHECK(serialize(trivial) == "alphabet: a b c\nbasepoint 0\n");

    CoreGraph H = build_core_graph(testutil::example22_H(abc), abc);
    std::string text = serialize(H);
    CHECK(deserialize(text) == H);

    // Figure-style adjacency: sources 0 and 2, sinks 1 and 3,
    // a- and c-edges in parallel on both squares, one b-edge across.
    CHECK(text ==
          "basepoint 0\n"
          "edge 0 1 a\n"
          "edge 0 1 c\n"
          "edge 2 3 a\n"
          "edge 2 1 b\n"
          "edge 2 3 c\n");

    // Vertices are the mentioned integers; ids need not be dense.
    CoreGraph sparse = deserialize("basepoint 5\nedge 5 9 a\nedge 9 5 a\n");
    CHECK(sparse.num_vertices() == 2);
    CHECK(rank(sparse) == 1);

    CHECK_THROWS_AS(deserialize("basepoint 0\nedge 0 zz a\n"), parse_error);
    CHECK_THROWS_AS(deserialize("edge 0 0 a\n"), parse_error);
    CHECK_THROWS_AS(deserialize("basepoint 0\nedge 0 0 a\nrank 7\n"), parse_error);
}

TEST_CASE("serialization is canonical across generator presentations") {
    Alphabet xy = Alphabet::xy();
    CoreGraph g1 = build_core_graph(words({"xy", "yx"}, xy), xy);
    CoreGraph g2 = build_core_graph(words({"yx", "xy", "xy"}, xy), xy);
    CHECK(serialize(g1) == serialize(g2));
}

TEST_CASE("random generator sets: membership, rank bound, fold confluence, core property") {
    Alphabet xy = Alphabet::xy();
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Word> gens = testutil::random_generators(xy, 4, 8, rng);
        CoreGraph g = build_core_graph(gens, xy);
        for (const Word& u : gens) CHECK(contains(g, u));
        CHECK(rank(g) <= static_cast<int>(gens.size()));
        for (int v = 1; v < g.num_vertices(); ++v) CHECK(g.valence(v) >= 2);

        // Shuffled generator order folds to the same canonical graph.
        std::vector<Word> shuffled = gens;
        for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
        CHECK(serialize(build_core_graph(shuffled, xy)) == serialize(g));

        // Basis words are accepted and there are exactly rank-many.
        std::vector<Word> basis = basis_words(g);
        CHECK(static_cast<int>(basis.size()) == rank(g));
        for (const Word& u : basis) CHECK(contains(g, u));
    }
}

TEST_CASE("bipartite scheme exists exactly for theta images") {
    Alphabet xy = Alphabet::xy();
    Alphabet abc = Alphabet::theta_target();
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Word> gens = testutil::random_generators(xy, 3, 6, rng);
        std::vector<Word> embedded;
        for (const Word& u : gens) embedded.push_back(theta_embed(u, xy));
        CoreGraph g = build_core_graph(embedded, abc);
        auto sides = uv_sides(g);
        REQUIRE(sides.has_value());
        for (const Edge& e : g.edges()) {
            CHECK((*sides)[e.origin] == 0);
            CHECK((*sides)[e.terminus] == 1);
        }
    }
    // A mixed vertex breaks the scheme.
    CoreGraph loop = build_core_graph({w("a", abc)}, abc);
    CHECK_FALSE(uv_sides(loop).has_value());
}

TEST_CASE("normalize_pair on the fixture is the identity") {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(testutil::example22_H(abc), abc);
    CoreGraph K = build_core_graph(testutil::example22_K(abc), abc);
    NormalizedPair np = normalize_pair(H, K);
    CHECK(np.conjugator.empty());
    CHECK(np.H == H);
    CHECK(np.K == K);
}

TEST_CASE("normalize_pair trims a hanging basepoint") {
    Alphabet xy = Alphabet::xy();
    CoreGraph H = build_core_graph({w("xyX", xy)}, xy);
    CoreGraph K = build_core_graph({w("xyyX", xy)}, xy);
    NormalizedPair np = normalize_pair(H, K);
    CHECK(print_word(np.conjugator) == "X");
    CHECK(rank(np.H) == 1);
    CHECK(rank(np.K) == 1);
    CHECK(contains(np.H, w("y", xy)));
    CHECK(contains(np.K, w("yy", xy)));
    CHECK_FALSE(contains(np.K, w("y", xy)));
    // Ranks unchanged by conjugation.
    CHECK(rank(np.H) == rank(H));
    CHECK(rank(np.K) == rank(K));

    // Diagonal case: H = K gets cyclically reduced.
    NormalizedPair diag = normalize_pair(H, H);
    CHECK(rank(diag.H) == 1);
    CHECK(diag.H.num_vertices() == 1);
    CHECK(print_word(diag.conjugator) == "X");
}

TEST_CASE("normalize_pair rejects trivial intersections") {
    Alphabet xy = Alphabet::xy();
    CoreGraph H = build_core_graph({w("x", xy)}, xy);
    CoreGraph K = build_core_graph({w("y", xy)}, xy);
    CHECK_THROWS_AS(normalize_pair(H, K), precondition_error);
}

TEST_CASE("rebase keeps the subgroup conjugate") {
    Alphabet xy = Alphabet::xy();
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Word> gens = testutil::random_generators(xy, 3, 6, rng);
        CoreGraph g = build_core_graph(gens, xy);
        if (g.num_vertices() < 2) continue;
        int target = 1 + static_cast<int>(rng.below(g.num_vertices() - 1));
        CoreGraph moved = rebase(g, target);
        CHECK(rank(moved) == rank(g));
    }
}
