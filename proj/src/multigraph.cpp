#include "stallings/multigraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stack>

#include "stallings/errors.hpp"

namespace stallings {

const char* color_name(Color c) {
    switch (c) {
        case Color::magenta: return "magenta";
        case Color::yellow: return "yellow";
        case Color::cyan: return "cyan";
    }
    return "?";
}

Color parse_color(const std::string& name) {
    if (name == "magenta") return Color::magenta;
    if (name == "yellow") return Color::yellow;
    if (name == "cyan") return Color::cyan;
    throw parse_error("unknown color '" + name + "' (want magenta, yellow or cyan)");
}

ColoredMultigraph::ColoredMultigraph(int n, std::vector<ColoredEdge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw domain_error("negative vertex count");
    std::set<ColoredEdge> seen;
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v) throw domain_error("class C_n forbids loops");
        if (e.u < 0 || e.v >= n_) throw domain_error("edge endpoint out of range");
        if (!seen.insert(e).second)
            throw domain_error("duplicate edge: at most one edge per color per vertex pair");
    }
    std::sort(edges_.begin(), edges_.end());
}

bool ColoredMultigraph::can_add(int u, int v, Color c) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    ColoredEdge e{std::min(u, v), std::max(u, v), c};
    return std::find(edges_.begin(), edges_.end(), e) == edges_.end();
}

ColoredMultigraph ColoredMultigraph::with_edge(int u, int v, Color c) const {
    std::vector<ColoredEdge> es = edges_;
    es.push_back({u, v, c});
    return ColoredMultigraph(n_, std::move(es));
}

namespace {

class Dsu {
  public:
    explicit Dsu(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

  private:
    std::vector<int> parent_;
};

bool pair_has(Color pair_a, Color pair_b, Color c) { return c == pair_a || c == pair_b; }

}  // namespace

long sigma(const ColoredMultigraph& g) {
    const int n = g.n();
    Dsu full(n);
    // One DSU per two-color subgraph.
    Dsu my(n), yc(n), mc(n);
    for (const auto& e : g.edges()) {
        full.unite(e.u, e.v);
        if (pair_has(Color::magenta, Color::yellow, e.color)) my.unite(e.u, e.v);
        if (pair_has(Color::yellow, Color::cyan, e.color)) yc.unite(e.u, e.v);
        if (pair_has(Color::magenta, Color::cyan, e.color)) mc.unite(e.u, e.v);
    }
    // val_colors(C) = number of colors-subgraph components met by C.
    std::set<std::pair<int, int>> my_roots, yc_roots, mc_roots;
    std::set<int> comps;
    for (int v = 0; v < n; ++v) {
        int c = full.find(v);
        comps.insert(c);
        my_roots.insert({c, my.find(v)});
        yc_roots.insert({c, yc.find(v)});
        mc_roots.insert({c, mc.find(v)});
    }
    return static_cast<long>(my_roots.size() + yc_roots.size() + mc_roots.size()) -
           2L * static_cast<long>(comps.size());
}

std::vector<std::vector<int>> biconnected_blocks(int num_vertices,
                                                 const std::vector<std::pair<int, int>>& edges) {
    // Iterative Hopcroft-Tarjan over a multigraph: parallel edges are
    // distinct, and only the specific tree edge is skipped on the way back,
    // so a parallel pair correctly closes a block.
    struct Half {
        int to, edge;
    };
    std::vector<std::vector<Half>> adj(num_vertices);
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        adj[edges[i].first].push_back({edges[i].second, i});
        adj[edges[i].second].push_back({edges[i].first, i});
    }

    std::vector<int> num(num_vertices, -1), low(num_vertices, 0);
    std::vector<std::vector<int>> blocks;
    std::stack<int> estack;
    int counter = 0;

    for (int root = 0; root < num_vertices; ++root) {
        if (num[root] >= 0) continue;
        std::stack<std::pair<int, int>> call;  // (vertex, incoming edge id)
        std::vector<std::size_t> cursor(num_vertices, 0);
        num[root] = low[root] = counter++;
        call.push({root, -1});
        while (!call.empty()) {
            auto [v, in_edge] = call.top();
            if (cursor[v] < adj[v].size()) {
                Half h = adj[v][cursor[v]++];
                if (h.edge == in_edge) continue;
                if (num[h.to] < 0) {
                    estack.push(h.edge);
                    num[h.to] = low[h.to] = counter++;
                    call.push({h.to, h.edge});
                } else if (num[h.to] < num[v]) {
                    estack.push(h.edge);
                    low[v] = std::min(low[v], num[h.to]);
                }
            } else {
                call.pop();
                if (!call.empty()) {
                    int parent = call.top().first;
                    low[parent] = std::min(low[parent], low[v]);
                    if (low[v] >= num[parent]) {
                        // Pop one block: everything stacked above in_edge.
                        std::vector<int> block;
                        while (!estack.empty()) {
                            int e = estack.top();
                            estack.pop();
                            block.push_back(e);
                            if (e == in_edge) break;
                        }
                        blocks.push_back(std::move(block));
                    }
                }
            }
        }
    }
    return blocks;
}

bool has_nonmonochromatic_cycle(const ColoredMultigraph& g) {
    std::vector<std::pair<int, int>> plain;
    plain.reserve(g.edges().size());
    for (const auto& e : g.edges()) plain.push_back({e.u, e.v});
    for (const auto& block : biconnected_blocks(g.n(), plain)) {
        if (block.size() < 2) continue;  // a bridge carries no cycle
        Color first = g.edges()[block.front()].color;
        for (int idx : block)
            if (g.edges()[idx].color != first) return true;
    }
    return false;
}

ColoredMultigraph read_colored_multigraph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int declared_n = -1;
    std::vector<ColoredEdge> edges;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind[0] == '#') continue;
        if (kind == "vertices") {
            if (!(ls >> declared_n) || declared_n < 0)
                throw parse_error("line " + std::to_string(lineno) + ": expected 'vertices <n>'");
        } else if (kind == "edge") {
            int u, v;
            std::string color;
            if (!(ls >> u >> v >> color) || u < 0 || v < 0)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": expected 'edge <u> <v> <color>'");
            edges.push_back({u, v, parse_color(color)});
            max_vertex = std::max({max_vertex, u, v});
        } else {
            throw parse_error("line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
        }
    }
    int n = declared_n >= 0 ? declared_n : max_vertex + 1;
    return ColoredMultigraph(n, std::move(edges));
}

}  // namespace stallings
