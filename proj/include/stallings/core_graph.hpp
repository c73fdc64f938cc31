#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stallings/words.hpp"

namespace stallings {

// One positively oriented edge; the inverse edge is implicit.
struct Edge {
    int origin = 0;
    int terminus = 0;
    int label = 0;  // index into the alphabet

    bool operator==(const Edge& o) const {
        return origin == o.origin && terminus == o.terminus && label == o.label;
    }
    bool operator<(const Edge& o) const {
        if (origin != o.origin) return origin < o.origin;
        if (label != o.label) return label < o.label;
        return terminus < o.terminus;
    }
};

// Plain directed labeled graph, not necessarily folded or connected.
// Vertex ids are dense 0..num_vertices-1.
struct LabeledGraph {
    Alphabet alphabet;
    int num_vertices = 0;
    std::vector<Edge> edges;
};

// Mutable staging area for graph constructions: wedge loops together, fold,
// trim, then freeze into a CoreGraph.  Single-use, single-threaded.
class GraphBuilder {
  public:
    explicit GraphBuilder(Alphabet alphabet);

    int add_vertex();
    void add_edge(int origin, int terminus, int label);

    // Trace a freely reduced word as a loop at `basepoint`.
    void add_loop(int basepoint, const Word& w);

    // Identify edges with equal label and equal origin (or terminus) until
    // the labeling is proper.  Confluent, so the order of identifications
    // does not matter.
    void fold();

    // Remove hanging trees: every valence-1 vertex except the basepoint.
    void trim(int basepoint);

    int find(int v);  // current representative of a vertex id

    LabeledGraph snapshot(int basepoint, int* basepoint_out);

  private:
    Alphabet alphabet_;
    int next_vertex_ = 0;
    std::vector<int> parent_;
    std::vector<Edge> edges_;
    std::vector<bool> dead_vertex_;
};

class CoreGraph;

// Canonical renumbering: breadth-first from the basepoint, at each vertex
// following out-edges then in-edges per alphabet order.  Equal subgroups
// built from equal graphs get byte-equal serializations.
struct Canonicalization {
    std::vector<int> vertex_map;  // old id -> new id
    std::vector<int> edge_map;    // old edge index -> new edge index
};

// Folded, connected, based graph whose only possible valence-1 vertex is the
// basepoint: the Stallings core graph of one finitely generated subgroup.
// Immutable after construction; the basepoint is always vertex 0.
class CoreGraph {
  public:
    // Validates all invariants and canonicalizes.  `canon_out`, when given,
    // receives the renumbering applied to the input ids.
    CoreGraph(LabeledGraph g, int basepoint, Canonicalization* canon_out = nullptr);

    const Alphabet& alphabet() const { return alphabet_; }
    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }
    int basepoint() const { return 0; }

    // -1 when absent; folded graphs have at most one edge per (vertex, label, direction).
    int out_vertex(int v, int label) const { return out_[v][label]; }
    int in_vertex(int v, int label) const { return in_[v][label]; }
    int out_edge(int v, int label) const { return out_edge_[v][label]; }
    int in_edge(int v, int label) const { return in_edge_[v][label]; }

    int valence(int v) const;

    bool operator==(const CoreGraph& o) const {
        return alphabet_ == o.alphabet_ && num_vertices_ == o.num_vertices_ && edges_ == o.edges_;
    }

  private:
    Alphabet alphabet_;
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_, out_edge_, in_edge_;

    void build_adjacency();
    void validate() const;
    Canonicalization canonicalize(int basepoint);
};

// Stallings construction: wedge of subdivided loops, fold, trim.
// An empty generator list yields the one-vertex graph of the trivial subgroup.
CoreGraph build_core_graph(const std::vector<Word>& generators, const Alphabet& alphabet);

// rank = #E+ - #V + 1 for a connected graph.
int rank(const CoreGraph& g);
int graph_rank(const LabeledGraph& g);  // throws on disconnected input
int reduced_rank(int rank);             // max(0, rank - 1)

// True iff w labels a closed path at the basepoint, i.e. w is in the subgroup.
bool contains(const CoreGraph& g, const Word& w);

// Free basis read off a spanning tree; contains() accepts every entry and
// the list has exactly rank(g) words.
std::vector<Word> basis_words(const CoreGraph& g);

// Moves the basepoint and trims; the represented subgroup is conjugated by
// the label of the connecting path.
CoreGraph rebase(const CoreGraph& g, int new_basepoint);

// u/v-coloring of the two-vertex base scheme: side[v] is 0 where v covers u
// (all incident edges outgoing) and 1 where it covers v.  Empty optional if
// some vertex has both incoming and outgoing edges.
std::optional<std::vector<int>> uv_sides(const CoreGraph& g);

std::string serialize(const CoreGraph& g);
CoreGraph deserialize(const std::string& text);

}  // namespace stallings
