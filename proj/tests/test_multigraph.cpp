#include <functional>
#include <vector>

#include "doctest.h"
#include "stallings/errors.hpp"
#include "stallings/multigraph.hpp"
#include "stallings/rng.hpp"

using namespace stallings;

namespace {

ColoredMultigraph triangle(Color a, Color b, Color c) {
    return ColoredMultigraph(3, {{0, 1, a}, {1, 2, b}, {0, 2, c}});
}

// Independent oracle: enumerate simple cycles (parallel pairs included) and
// look for one with two colors.  Exponential, fine for small graphs.
bool brute_nonmono(const ColoredMultigraph& g) {
    const auto& edges = g.edges();
    int n = g.n();
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge idx)
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].u].push_back({edges[i].v, i});
        adj[edges[i].v].push_back({edges[i].u, i});
    }
    for (int start = 0; start < n; ++start) {
        std::vector<bool> on_path(n, false);
        on_path[start] = true;
        std::vector<int> cycle_edges;
        bool found = false;
        std::function<void(int)> dfs = [&](int cur) {
            if (found) return;
            for (auto [next, eidx] : adj[cur]) {
                if (found) return;
                if (next == start) {
                    if (cycle_edges.empty() || eidx == cycle_edges.front()) continue;
                    Color first = edges[cycle_edges.front()].color;
                    bool mixed = edges[eidx].color != first;
                    for (int ce : cycle_edges)
                        if (edges[ce].color != first) mixed = true;
                    if (mixed) {
                        found = true;
                        return;
                    }
                } else if (next > start && !on_path[next]) {
                    on_path[next] = true;
                    cycle_edges.push_back(eidx);
                    dfs(next);
                    cycle_edges.pop_back();
                    on_path[next] = false;
                }
            }
        };
        dfs(start);
        if (found) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("sigma on the defining examples") {
    CHECK(sigma(ColoredMultigraph(5, {})) == 5);
    CHECK(sigma(triangle(Color::magenta, Color::yellow, Color::cyan)) == 1);
    CHECK(sigma(triangle(Color::magenta, Color::magenta, Color::magenta)) == 3);
    CHECK(sigma(ColoredMultigraph(0, {})) == 0);
}

TEST_CASE("nonmonochromatic cycle detection on basics") {
    CHECK(has_nonmonochromatic_cycle(triangle(Color::magenta, Color::yellow, Color::cyan)));
    CHECK_FALSE(has_nonmonochromatic_cycle(triangle(Color::magenta, Color::magenta, Color::magenta)));
    // Any forest is clean.
    CHECK_FALSE(has_nonmonochromatic_cycle(
        ColoredMultigraph(4, {{0, 1, Color::magenta}, {1, 2, Color::yellow}, {1, 3, Color::cyan}})));
    // A parallel pair is a two-edge cycle and always mixes colors.
    CHECK(has_nonmonochromatic_cycle(
        ColoredMultigraph(2, {{0, 1, Color::magenta}, {0, 1, Color::cyan}})));
}

TEST_CASE("class constraints are enforced") {
    CHECK_THROWS_AS(ColoredMultigraph(2, {{0, 0, Color::magenta}}), domain_error);
    CHECK_THROWS_AS(
        ColoredMultigraph(2, {{0, 1, Color::magenta}, {1, 0, Color::magenta}}), domain_error);
}

TEST_CASE("edge list parser") {
    ColoredMultigraph g =
        read_colored_multigraph("edge 0 1 magenta\nedge 1 2 yellow\nedge 2 0 cyan\n");
    CHECK(g.n() == 3);
    CHECK(sigma(g) == 1);
    CHECK(has_nonmonochromatic_cycle(g));

    ColoredMultigraph iso = read_colored_multigraph("vertices 5\n");
    CHECK(iso.n() == 5);
    CHECK(sigma(iso) == 5);

    CHECK_THROWS_AS(read_colored_multigraph("edge 0 1 purple\n"), parse_error);
    CHECK_THROWS_AS(read_colored_multigraph("edgy 0 1 cyan\n"), parse_error);
}

TEST_CASE("exhaustive n <= 4: sigma bound, equality criterion, brute-force cross-check") {
    const std::array<Color, 3> colors{Color::magenta, Color::yellow, Color::cyan};
    for (int n = 1; n <= 4; ++n) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) slots.push_back({u, v});
        long combos = 1;
        for (std::size_t i = 0; i < slots.size(); ++i) combos *= 8;
        for (long mask = 0; mask < combos; ++mask) {
            std::vector<ColoredEdge> edges;
            long m = mask;
            for (auto [u, v] : slots) {
                int bits = static_cast<int>(m % 8);
                m /= 8;
                for (int ci = 0; ci < 3; ++ci)
                    if (bits & (1 << ci)) edges.push_back({u, v, colors[ci]});
            }
            ColoredMultigraph g(n, std::move(edges));
            long s = sigma(g);
            bool nonmono = has_nonmonochromatic_cycle(g);
            REQUIRE(s <= n);
            REQUIRE((s == n) == !nonmono);
            REQUIRE(nonmono == brute_nonmono(g));
        }
    }
}

TEST_CASE("incremental edge additions move sigma by the case analysis") {
    // Decide the case from the state before the edge goes in: with the new
    // edge's color x, look at the two two-color subgraphs containing x.
    // Disconnected endpoints: 0.  Same component: both subgraphs already
    // connect them -> 0, exactly one -> -1, neither -> -2.
    Rng rng(4242);
    const std::array<Color, 3> colors{Color::magenta, Color::yellow, Color::cyan};
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + static_cast<int>(rng.below(7));
        ColoredMultigraph g(n, {});
        int additions = static_cast<int>(rng.below(3 * n));
        for (int step = 0; step < additions; ++step) {
            int u = static_cast<int>(rng.below(n));
            int v = static_cast<int>(rng.below(n));
            Color c = colors[rng.below(3)];
            if (!g.can_add(u, v, c)) continue;

            auto connected_pair = [&](Color a, Color b) {
                std::vector<int> parent(n);
                for (int i = 0; i < n; ++i) parent[i] = i;
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (const auto& e : g.edges())
                    if (e.color == a || e.color == b) parent[find(e.u)] = find(e.v);
                return find(u) == find(v);
            };
            auto connected_all = [&] {
                std::vector<int> parent(n);
                for (int i = 0; i < n; ++i) parent[i] = i;
                std::function<int(int)> find = [&](int x) {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (const auto& e : g.edges()) parent[find(e.u)] = find(e.v);
                return find(u) == find(v);
            };

            Color other1 = c == Color::magenta ? Color::yellow : Color::magenta;
            Color other2 = c == Color::cyan ? Color::yellow : Color::cyan;
            long expected_delta;
            if (!connected_all()) {
                expected_delta = 0;
            } else {
                int linked = (connected_pair(c, other1) ? 1 : 0) +
                             (connected_pair(c, other2) ? 1 : 0);
                expected_delta = linked - 2;
            }
            long before = sigma(g);
            g = g.with_edge(u, v, c);
            long after = sigma(g);
            CHECK(after - before == expected_delta);
            CHECK((expected_delta == 0 || expected_delta == -1 || expected_delta == -2));
        }
    }
}

TEST_CASE("random instances up to n = 8 keep the bound and the equivalence") {
    Rng rng(99991);
    const std::array<Color, 3> colors{Color::magenta, Color::yellow, Color::cyan};
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 1 + static_cast<int>(rng.below(8));
        ColoredMultigraph g(n, {});
        int additions = static_cast<int>(rng.below(2 * n + 1));
        for (int step = 0; step < additions; ++step) {
            int u = static_cast<int>(rng.below(n));
            int v = static_cast<int>(rng.below(n));
            Color c = colors[rng.below(3)];
            if (g.can_add(u, v, c)) g = g.with_edge(u, v, c);
        }
        long s = sigma(g);
        CHECK(s <= n);
        CHECK((s == n) == !has_nonmonochromatic_cycle(g));
    }
}
