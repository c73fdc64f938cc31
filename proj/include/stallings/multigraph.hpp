#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stallings {

// The three colors of class C_n, keyed to the Dicks subgraphs:
// magenta <-> Omega_ab, yellow <-> Omega_ac, cyan <-> Omega_bc.
enum class Color : int { magenta = 0, yellow = 1, cyan = 2 };

const char* color_name(Color c);
Color parse_color(const std::string& name);

struct ColoredEdge {
    int u = 0, v = 0;  // stored with u < v
    Color color = Color::magenta;

    bool operator<(const ColoredEdge& o) const {
        if (u != o.u) return u < o.u;
        if (v != o.v) return v < o.v;
        return static_cast<int>(color) < static_cast<int>(o.color);
    }
    bool operator==(const ColoredEdge& o) const {
        return u == o.u && v == o.v && color == o.color;
    }
};

// Element of class C_n: a loopless 3-edge-colored multigraph on n vertices
// with at most one edge per color between any vertex pair.
class ColoredMultigraph {
  public:
    ColoredMultigraph(int n, std::vector<ColoredEdge> edges);

    int n() const { return n_; }
    const std::vector<ColoredEdge>& edges() const { return edges_; }

    bool can_add(int u, int v, Color c) const;
    ColoredMultigraph with_edge(int u, int v, Color c) const;

  private:
    int n_ = 0;
    std::vector<ColoredEdge> edges_;
};

// Sigma: over connected components, the component counts of the three
// two-color subgraphs minus 2.  Always <= n; equality exactly when every
// cycle is monochromatic.
long sigma(const ColoredMultigraph& g);

// True iff some cycle (parallel pairs count, length >= 2) uses two or more
// colors.  Decided through the block decomposition: a 2-connected block
// carries a common cycle through any two of its edges, so a block is safe
// exactly when its edges are all one color.
bool has_nonmonochromatic_cycle(const ColoredMultigraph& g);

// Biconnected components of an undirected multigraph given as endpoint
// pairs; returns one vector of edge indices per block.  Bridges form
// singleton blocks.
std::vector<std::vector<int>> biconnected_blocks(int num_vertices,
                                                 const std::vector<std::pair<int, int>>& edges);

// Edge-list text format: lines "edge <u> <v> <color>" with an optional
// "vertices <n>" record when isolated vertices matter.
ColoredMultigraph read_colored_multigraph(const std::string& text);

}  // namespace stallings
