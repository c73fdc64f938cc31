#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "stallings/dicks.hpp"
#include "stallings/errors.hpp"

using namespace stallings;
using testutil::w;
using testutil::words;

namespace {

DicksBundle fixture22() {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(testutil::example22_H(abc), abc);
    CoreGraph K = build_core_graph(testutil::example22_K(abc), abc);
    return DicksBundle(H, K, pullback(H, K));
}

DicksBundle fixture62() {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(testutil::example62_H(abc), abc);
    CoreGraph K = build_core_graph(testutil::example62_K(abc), abc);
    NormalizedPair np = normalize_pair(H, K);
    return DicksBundle(np.H, np.K, pullback(np.H, np.K));
}

// The full base graph X as a subgroup: theta(F(x, y)).
DicksBundle fixture_diagonal() {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph X = build_core_graph(words({"cA", "cB"}, abc), abc);
    return DicksBundle(X, X, pullback(X, X));
}

std::set<std::pair<std::string, std::string>> omega_edges(const DicksBundle& b, int cover) {
    std::set<std::pair<std::string, std::string>> out;
    for (int mv = 0; mv < b.num_omega_edges(); ++mv)
        if (b.edge_cover(mv) == cover)
            out.insert({b.vertex_name(b.edge_endpoint_H(mv)), b.vertex_name(b.edge_endpoint_K(mv))});
    return out;
}

}  // namespace

TEST_CASE("fixture pair: omega_u and omega_v edge sets") {
    DicksBundle b = fixture22();
    // Canonical ids against the figure's numbering: H0..H3 = 1..4 and
    // K0,K1,K2,K3 = 7,6,8,5, so {1-7, 3-5, 3-7} reads as below.
    CHECK(omega_edges(b, 0) ==
          std::set<std::pair<std::string, std::string>>{{"H0", "K0"}, {"H2", "K3"}, {"H2", "K0"}});
    CHECK(omega_edges(b, 1) ==
          std::set<std::pair<std::string, std::string>>{{"H1", "K2"}, {"H3", "K1"}, {"H1", "K1"}});

    // Letter graph sizes: omega_a 3/2, omega_b 3/2, omega_c 4/2.
    std::array<int, 3> vertex_counts{0, 0, 0}, edge_counts{0, 0, 0};
    for (int ge = 0; ge < b.num_gamma_edges(); ++ge) vertex_counts[b.gedge_label(ge)]++;
    const CoreGraph& m = b.pb().meet;
    for (int me = 0; me < m.num_edges(); ++me) edge_counts[m.edge(me).label]++;
    CHECK(vertex_counts == std::array<int, 3>{3, 3, 4});
    CHECK(edge_counts == std::array<int, 3>{2, 2, 2});
}

TEST_CASE("fixture pair: duality pairs the trefoil components") {
    DicksBundle b = fixture22();
    DualityReport dr = check_duality(b);
    // A and B have one pair each, C has two: six components over A,B,C.
    CHECK(dr.component_counts == std::array<int, 3>{2, 2, 4});
    REQUIRE(dr.pairs.size() == 4);

    auto names = [&](const std::vector<int>& gids) {
        std::set<std::string> out;
        for (int gid : gids) out.insert(b.vertex_name(gid));
        return out;
    };
    // a-pair: o(Omega_a) = {1-7-3} pairs with t(Omega_a) = {2-6-4}.
    CHECK(dr.pairs[0].letter == 0);
    CHECK(names(dr.pairs[0].u_vertices) == std::set<std::string>{"H0", "H2", "K0"});
    CHECK(names(dr.pairs[0].v_vertices) == std::set<std::string>{"H1", "H3", "K1"});
    // c-pairs: {1,7}<->{2,8} and {3,5}<->{4,6}.
    std::set<std::set<std::string>> c_pairs;
    for (const auto& p : dr.pairs)
        if (p.letter == 2) {
            std::set<std::string> both = names(p.u_vertices);
            for (const auto& nm : names(p.v_vertices)) both.insert(nm + "'");
            c_pairs.insert(both);
        }
    CHECK(c_pairs == std::set<std::set<std::string>>{{"H0", "K0", "H1'", "K2'"},
                                                     {"H2", "K3", "H3'", "K1'"}});
}

TEST_CASE("fixture pair: omega_abc, ccg and sigma") {
    DicksBundle b = fixture22();
    CHECK(b.abc_vertices_H_side() == 2);
    CHECK(b.abc_vertices_K_side() == 2);
    CHECK(b.abc_edge_count() == 0);
    CHECK(b.num_abc_components() == 4);

    ColoredMultigraph ccg = build_ccg(b);
    CHECK(ccg.n() == 4);
    REQUIRE(ccg.edges().size() == 2);
    for (const auto& e : ccg.edges()) CHECK(e.color == Color::magenta);
    CHECK(sigma(ccg) == 4);
    CHECK_FALSE(has_nonmonochromatic_cycle(ccg));
}

TEST_CASE("fixture pair: theorem report holds with equality") {
    DicksBundle b = fixture22();
    RankProfile p = rank_profile(b.H(), b.K());
    Theorem43Report tr = theorem43_report(b, p);
    CHECK(tr.ok);
    CHECK(tr.abc_components == 4);
    CHECK(tr.two_rr_T == 4);
    CHECK(tr.equality);
    CHECK(tr.cycles_confined);
    CHECK(tr.sigma_ccg == 4);
}

TEST_CASE("fixture pair: dicks pushout model agrees with the quotient") {
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(testutil::example22_H(abc), abc);
    CoreGraph K = build_core_graph(testutil::example22_K(abc), abc);
    PullbackResult pb = pullback(H, K);
    DicksBundle b(H, K, pb);
    PushoutGraph t1 = pushout(H, K, pb);
    PushoutGraph t2 = pushout_from_dicks(b);
    CHECK(compare_pushouts(t1, t2));
    CHECK(t2.graph.num_vertices == 2);
    CHECK(t2.graph.edges.size() == 4);
    CHECK(t2.rank() == 3);
}

TEST_CASE("fixture pair: SIG(K_{1,1}) is the labeled hexagon") {
    DicksBundle b = fixture22();
    SigGraph sig = build_sig(b, 1, 1);
    REQUIRE(sig.vertices.size() == 6);
    REQUIRE(sig.edges.size() == 6);
    std::array<int, 3> labels{0, 0, 0};
    for (const auto& e : sig.edges) labels[e.label]++;
    CHECK(labels == std::array<int, 3>{2, 2, 2});
    CHECK(sig.odd_valence_count() == 0);
    // A single cycle: connected with every vertex of undirected valence 2.
    std::vector<int> deg(sig.vertices.size(), 0);
    for (const auto& e : sig.edges) {
        deg[e.from]++;
        deg[e.to]++;
    }
    for (int d : deg) CHECK(d == 2);
    std::vector<int> stack{0};
    std::set<int> seen{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : sig.edges) {
            int other = -1;
            if (e.from == v) other = e.to;
            if (e.to == v) other = e.from;
            if (other >= 0 && !seen.count(other)) {
                seen.insert(other);
                stack.push_back(other);
            }
        }
    }
    CHECK(seen.size() == sig.vertices.size());
}

TEST_CASE("second fixture: K_{2,3} component plus three singletons") {
    DicksBundle b = fixture62();
    CHECK(b.abc_vertices_H_side() == 6);
    CHECK(b.abc_vertices_K_side() == 2);
    CHECK(b.abc_edge_count() == 6);
    REQUIRE(b.num_abc_components() == 4);

    // Partition the abc vertices by component; expect sizes {5,1,1,1} and
    // the big one complete bipartite 3 x 2.
    std::vector<std::vector<int>> comps(4);
    for (int gid = 0; gid < b.num_omega_vertices(); ++gid)
        if (b.abc_component(gid) >= 0) comps[b.abc_component(gid)].push_back(gid);
    std::vector<std::size_t> sizes;
    for (const auto& c : comps) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 1, 5});

    for (const auto& comp : comps) {
        if (comp.size() != 5) continue;
        int h_side = 0, k_side = 0;
        for (int gid : comp) (b.vertex_is_H(gid) ? h_side : k_side)++;
        CHECK(h_side == 3);
        CHECK(k_side == 2);
        // All 6 cross edges present in Omega_abc.
        std::set<std::pair<int, int>> present;
        for (int mv = 0; mv < b.num_omega_edges(); ++mv)
            if (b.edge_tags(mv) == 0b111u)
                present.insert({b.edge_endpoint_H(mv), b.edge_endpoint_K(mv)});
        int found = 0;
        for (int x : comp)
            for (int y : comp)
                if (b.vertex_is_H(x) && !b.vertex_is_H(y) && present.count({x, y})) ++found;
        CHECK(found == 6);
    }

    RankProfile p = rank_profile(b.H(), b.K());
    CHECK(p == RankProfile{4, 2, 2, 4});
    Theorem43Report tr = theorem43_report(b, p);
    CHECK(tr.ok);
    CHECK(tr.two_rr_T == 2);
    CHECK(tr.abc_components == 4);
    CHECK_FALSE(tr.equality);
    CHECK_FALSE(tr.cycles_confined);
    CHECK(tr.sigma_ccg == 2);
}

TEST_CASE("second fixture: SIG(K_{2,3}) valences") {
    DicksBundle b = fixture62();
    SigGraph sig = build_sig(b, 2, 3);
    REQUIRE(sig.vertices.size() == 4);
    std::vector<int> valences;
    for (const auto& v : sig.vertices) valences.push_back(v.valence);
    std::sort(valences.begin(), valences.end());
    CHECK(valences == std::vector<int>{1, 1, 1, 3});
    CHECK(sig.odd_valence_count() % 2 == 0);
}

TEST_CASE("diagonal bundle: two single abc edges and T = X") {
    DicksBundle b = fixture_diagonal();
    CHECK(b.abc_vertices_H_side() == 2);
    CHECK(b.abc_vertices_K_side() == 2);
    CHECK(b.abc_edge_count() == 2);
    CHECK(b.num_abc_components() == 2);

    DualityReport dr = check_duality(b);
    CHECK(dr.component_counts == std::array<int, 3>{2, 2, 2});

    PushoutGraph t = pushout_from_dicks(b);
    CHECK(t.graph.num_vertices == 2);
    CHECK(t.graph.edges.size() == 3);
    CHECK(t.rank() == 2);

    RankProfile p = rank_profile(b.H(), b.K());
    Theorem43Report tr = theorem43_report(b, p);
    CHECK(tr.ok);
    CHECK(tr.equality);
}

TEST_CASE("oversized SIG shapes give the empty graph") {
    DicksBundle b = fixture22();
    SigGraph sig = build_sig(b, 5, 5);
    CHECK(sig.vertices.empty());
    CHECK(sig.edges.empty());
}

TEST_CASE("bundle construction rejects bad inputs") {
    Alphabet abc = Alphabet::theta_target();
    Alphabet xy = Alphabet::xy();
    // Wrong alphabet size.
    CoreGraph H2 = build_core_graph(words({"xy", "yx"}, xy), xy);
    CHECK_THROWS_AS(DicksBundle(H2, H2, pullback(H2, H2)), domain_error);
    // Non-bipartite over the 3-letter alphabet.
    CoreGraph loop = build_core_graph(words({"a", "b", "c"}, abc), abc);
    CHECK_THROWS_AS(DicksBundle(loop, loop, pullback(loop, loop)), domain_error);
    // Valence-1 basepoint: theta image before normalization.
    CoreGraph hanging = build_core_graph({theta_embed(w("xyX", xy), xy)}, abc);
    CoreGraph X = build_core_graph(words({"cA", "cB"}, abc), abc);
    CHECK_THROWS_AS(DicksBundle(hanging, X, pullback(hanging, X)), precondition_error);
}

TEST_CASE("dicks report carries the key-value section") {
    DicksBundle b = fixture22();
    std::string report = dicks_report(b, rank_profile(b.H(), b.K()));
    CHECK(report.find("[kv]") != std::string::npos);
    CHECK(report.find("sigma=4") != std::string::npos);
    CHECK(report.find("abc_components=4") != std::string::npos);
    CHECK(report.find("ok=1") != std::string::npos);
    // Deterministic output.
    CHECK(report == dicks_report(b, rank_profile(b.H(), b.K())));
}

TEST_CASE("random theta pairs: the full invariant battery") {
    Alphabet xy = Alphabet::xy();
    Alphabet abc = Alphabet::theta_target();
    Rng rng(271828);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        std::vector<Word> hg = testutil::random_generators(xy, 3, 6, rng);
        std::vector<Word> kg = testutil::random_generators(xy, 3, 6, rng);
        std::vector<Word> hg_t, kg_t;
        for (const Word& u : hg) hg_t.push_back(theta_embed(u, xy));
        for (const Word& u : kg) kg_t.push_back(theta_embed(u, xy));
        CoreGraph H = build_core_graph(hg_t, abc);
        CoreGraph K = build_core_graph(kg_t, abc);
        PullbackResult pb0 = pullback(H, K);
        if (rank(pb0.meet) == 0) continue;

        NormalizedPair np = normalize_pair(H, K);
        PullbackResult pb = pullback(np.H, np.K);
        DicksBundle b(np.H, np.K, pb);
        RankProfile p = rank_profile(np.H, np.K);

        CHECK(b.abc_vertices_H_side() == 2 * reduced_rank(p.h));
        CHECK(b.abc_vertices_K_side() == 2 * reduced_rank(p.k));
        CHECK(b.abc_edge_count() == 2 * reduced_rank(p.c));

        Theorem43Report tr = theorem43_report(b, p);
        CHECK(tr.ok);
        check_duality(b);
        CHECK(compare_pushouts(pushout(np.H, np.K, pb), pushout_from_dicks(b)));

        SigGraph sig = build_sig(b, 1, 1);
        CHECK(sig.odd_valence_count() % 2 == 0);
        ++checked;
    }
    CHECK(checked >= 40);
}

TEST_CASE("equality can hold while an omega cycle escapes confinement") {
    // Found by the random battery: a pair where a mixed ac/bc cycle closes
    // through a single abc component, so the connectivity graph sees no
    // cycle at all and Sigma still reaches n.  The operative equality
    // criterion is the monochromatic condition on the CCG, not literal
    // cycle confinement in Omega.
    Alphabet abc = Alphabet::theta_target();
    CoreGraph H = build_core_graph(words({"cBaC", "cAcA", "cAcB"}, abc), abc);
    CoreGraph K = build_core_graph(words({"cAcAbC", "cBcB", "cAcBcAcAbCaC"}, abc), abc);
    REQUIRE(rank_profile(H, K) == RankProfile{3, 3, 2, 5});

    NormalizedPair np = normalize_pair(H, K);
    DicksBundle b(np.H, np.K, pullback(np.H, np.K));
    Theorem43Report tr = theorem43_report(b, rank_profile(np.H, np.K));
    CHECK(tr.equality);
    CHECK(tr.ccg_monochromatic);
    CHECK_FALSE(tr.cycles_confined);
    CHECK(tr.sigma_ccg == tr.two_rr_T);
    CHECK(tr.ok);
}

TEST_CASE("diagonal bundle's connectivity graph is two isolated vertices") {
    DicksBundle b = fixture_diagonal();
    ColoredMultigraph ccg = build_ccg(b);
    CHECK(ccg.n() == 2);
    CHECK(ccg.edges().empty());
    CHECK(sigma(ccg) == 2);
}
