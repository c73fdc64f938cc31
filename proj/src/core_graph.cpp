#include "stallings/core_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "stallings/errors.hpp"

namespace stallings {

GraphBuilder::GraphBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

int GraphBuilder::add_vertex() {
    parent_.push_back(next_vertex_);
    dead_vertex_.push_back(false);
    return next_vertex_++;
}

void GraphBuilder::add_edge(int origin, int terminus, int label) {
    edges_.push_back({origin, terminus, label});
}

void GraphBuilder::add_loop(int basepoint, const Word& w) {
    int cur = basepoint;
    const auto& syl = w.syllables();
    for (std::size_t i = 0; i < syl.size(); ++i) {
        int next = (i + 1 == syl.size()) ? basepoint : add_vertex();
        int label = alphabet_.index_of(syl[i].letter);
        if (label < 0) throw domain_error("word letter '" + syl[i].letter + "' outside the alphabet");
        if (syl[i].sign > 0)
            add_edge(cur, next, label);
        else
            add_edge(next, cur, label);
        cur = next;
    }
}

int GraphBuilder::find(int v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

void GraphBuilder::fold() {
    bool changed = true;
    while (changed) {
        changed = false;
        // Group surviving edges by (origin, label) and by (terminus, label);
        // any group of size > 1 forces an identification of the far ends.
        std::map<std::pair<int, int>, int> by_origin, by_terminus;
        for (const Edge& e : edges_) {
            int o = find(e.origin), t = find(e.terminus);
            auto [io, inserted_o] = by_origin.try_emplace({o, e.label}, t);
            if (!inserted_o && find(io->second) != t) {
                parent_[find(io->second)] = t;
                changed = true;
            }
            auto [it, inserted_t] = by_terminus.try_emplace({t, e.label}, o);
            if (!inserted_t && find(it->second) != o) {
                parent_[find(it->second)] = o;
                changed = true;
            }
        }
    }
    // Collapse identified edges.
    std::set<std::tuple<int, int, int>> seen;
    std::vector<Edge> out;
    for (const Edge& e : edges_) {
        Edge f{find(e.origin), find(e.terminus), e.label};
        if (seen.insert({f.origin, f.terminus, f.label}).second) out.push_back(f);
    }
    edges_ = std::move(out);
}

void GraphBuilder::trim(int basepoint) {
    int bp = find(basepoint);
    while (true) {
        std::vector<int> valence(next_vertex_, 0);
        for (const Edge& e : edges_) {
            valence[find(e.origin)]++;
            valence[find(e.terminus)]++;
        }
        int victim = -1;
        for (int v = 0; v < next_vertex_; ++v) {
            if (find(v) != v || dead_vertex_[v] || v == bp) continue;
            if (valence[v] <= 1) {
                victim = v;
                break;
            }
        }
        if (victim < 0) break;
        dead_vertex_[victim] = true;
        std::vector<Edge> kept;
        for (const Edge& e : edges_)
            if (find(e.origin) != victim && find(e.terminus) != victim) kept.push_back(e);
        edges_ = std::move(kept);
    }
}

LabeledGraph GraphBuilder::snapshot(int basepoint, int* basepoint_out) {
    std::vector<int> compact(next_vertex_, -1);
    int n = 0;
    for (int v = 0; v < next_vertex_; ++v)
        if (find(v) == v && !dead_vertex_[v]) compact[v] = n++;
    LabeledGraph g;
    g.alphabet = alphabet_;
    g.num_vertices = n;
    for (const Edge& e : edges_)
        g.edges.push_back({compact[find(e.origin)], compact[find(e.terminus)], e.label});
    if (basepoint_out) *basepoint_out = compact[find(basepoint)];
    return g;
}

CoreGraph::CoreGraph(LabeledGraph g, int basepoint, Canonicalization* canon_out)
    : alphabet_(std::move(g.alphabet)), num_vertices_(g.num_vertices), edges_(std::move(g.edges)) {
    if (basepoint < 0 || basepoint >= num_vertices_)
        throw domain_error("basepoint id out of range");
    for (const Edge& e : edges_) {
        if (e.origin < 0 || e.origin >= num_vertices_ || e.terminus < 0 || e.terminus >= num_vertices_)
            throw parse_error("edge endpoint out of range");
        if (e.label < 0 || e.label >= alphabet_.size())
            throw parse_error("edge label out of range");
    }
    build_adjacency();
    Canonicalization canon = canonicalize(basepoint);
    validate();
    if (canon_out) *canon_out = std::move(canon);
}

void CoreGraph::build_adjacency() {
    int a = alphabet_.size();
    out_.assign(num_vertices_, std::vector<int>(a, -1));
    in_.assign(num_vertices_, std::vector<int>(a, -1));
    out_edge_.assign(num_vertices_, std::vector<int>(a, -1));
    in_edge_.assign(num_vertices_, std::vector<int>(a, -1));
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const Edge& e = edges_[i];
        if (out_[e.origin][e.label] != -1)
            throw invariant_violation("graph is not folded: two edges labeled '" +
                                      alphabet_.letter(e.label) + "' leave vertex " +
                                      std::to_string(e.origin));
        if (in_[e.terminus][e.label] != -1)
            throw invariant_violation("graph is not folded: two edges labeled '" +
                                      alphabet_.letter(e.label) + "' enter vertex " +
                                      std::to_string(e.terminus));
        out_[e.origin][e.label] = e.terminus;
        out_edge_[e.origin][e.label] = i;
        in_[e.terminus][e.label] = e.origin;
        in_edge_[e.terminus][e.label] = i;
    }
}

Canonicalization CoreGraph::canonicalize(int basepoint) {
    std::vector<int> order(num_vertices_, -1);
    std::deque<int> queue{basepoint};
    order[basepoint] = 0;
    int next = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int l = 0; l < alphabet_.size(); ++l) {
            for (int w : {out_[v][l], in_[v][l]}) {
                if (w >= 0 && order[w] < 0) {
                    order[w] = next++;
                    queue.push_back(w);
                }
            }
        }
    }
    if (next != num_vertices_)
        throw invariant_violation("core graph must be connected (" + std::to_string(next) + " of " +
                                  std::to_string(num_vertices_) + " vertices reachable)");

    std::vector<Edge> renamed;
    renamed.reserve(edges_.size());
    for (const Edge& e : edges_) renamed.push_back({order[e.origin], order[e.terminus], e.label});
    std::vector<int> idx(edges_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return renamed[a] < renamed[b]; });

    Canonicalization canon;
    canon.vertex_map = order;
    canon.edge_map.assign(edges_.size(), -1);
    std::vector<Edge> sorted;
    sorted.reserve(edges_.size());
    for (int pos = 0; pos < static_cast<int>(idx.size()); ++pos) {
        canon.edge_map[idx[pos]] = pos;
        sorted.push_back(renamed[idx[pos]]);
    }
    edges_ = std::move(sorted);
    build_adjacency();
    return canon;
}

int CoreGraph::valence(int v) const {
    int val = 0;
    for (const Edge& e : edges_) {
        if (e.origin == v) ++val;
        if (e.terminus == v) ++val;
    }
    return val;
}

void CoreGraph::validate() const {
    for (int v = 1; v < num_vertices_; ++v)
        if (valence(v) <= 1)
            throw invariant_violation("vertex " + std::to_string(v) +
                                      " has valence " + std::to_string(valence(v)) +
                                      " but only the basepoint may hang");
}

CoreGraph build_core_graph(const std::vector<Word>& generators, const Alphabet& alphabet) {
    GraphBuilder b(alphabet);
    int bp = b.add_vertex();
    for (const Word& w : generators) b.add_loop(bp, w);
    b.fold();
    b.trim(bp);
    int bp_out = 0;
    LabeledGraph g = b.snapshot(bp, &bp_out);
    return CoreGraph(std::move(g), bp_out);
}

int rank(const CoreGraph& g) { return g.num_edges() - g.num_vertices() + 1; }

int graph_rank(const LabeledGraph& g) {
    if (g.num_vertices == 0) throw domain_error("rank of the empty graph is undefined");
    // Connectivity check over the symmetrized graph.
    std::vector<std::vector<int>> adj(g.num_vertices);
    for (const Edge& e : g.edges) {
        adj[e.origin].push_back(e.terminus);
        adj[e.terminus].push_back(e.origin);
    }
    std::vector<bool> seen(g.num_vertices, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
    }
    if (reached != g.num_vertices)
        throw domain_error("rank needs a connected graph (" + std::to_string(reached) + " of " +
                           std::to_string(g.num_vertices) + " vertices reachable)");
    return static_cast<int>(g.edges.size()) - g.num_vertices + 1;
}

int reduced_rank(int rank) { return rank > 1 ? rank - 1 : 0; }

bool contains(const CoreGraph& g, const Word& w) {
    int cur = g.basepoint();
    for (const Syllable& s : w.syllables()) {
        int l = g.alphabet().index_of(s.letter);
        if (l < 0) return false;
        cur = (s.sign > 0) ? g.out_vertex(cur, l) : g.in_vertex(cur, l);
        if (cur < 0) return false;
    }
    return cur == g.basepoint();
}

std::vector<Word> basis_words(const CoreGraph& g) {
    // BFS spanning tree in canonical order; one basis word per non-tree edge.
    int n = g.num_vertices();
    std::vector<int> parent(n, -1);
    std::vector<Syllable> step(n);  // syllable read along parent[v] -> v
    std::vector<bool> visited(n, false);
    std::vector<bool> tree_edge(g.num_edges(), false);
    std::deque<int> queue{0};
    visited[0] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int l = 0; l < g.alphabet().size(); ++l) {
            int w = g.out_vertex(v, l);
            if (w >= 0 && !visited[w]) {
                visited[w] = true;
                parent[w] = v;
                step[w] = {g.alphabet().letter(l), 1};
                tree_edge[g.out_edge(v, l)] = true;
                queue.push_back(w);
            }
            w = g.in_vertex(v, l);
            if (w >= 0 && !visited[w]) {
                visited[w] = true;
                parent[w] = v;
                step[w] = {g.alphabet().letter(l), -1};
                tree_edge[g.in_edge(v, l)] = true;
                queue.push_back(w);
            }
        }
    }
    auto path_from_base = [&](int v) {
        std::vector<Syllable> rev;
        while (v != 0) {
            rev.push_back(step[v]);
            v = parent[v];
        }
        std::reverse(rev.begin(), rev.end());
        return Word(std::move(rev));
    };
    std::vector<Word> basis;
    for (int i = 0; i < g.num_edges(); ++i) {
        if (tree_edge[i]) continue;
        const Edge& e = g.edge(i);
        Word mid(std::vector<Syllable>{{g.alphabet().letter(e.label), 1}});
        basis.push_back(concat(concat(path_from_base(e.origin), mid), invert(path_from_base(e.terminus))));
    }
    return basis;
}

CoreGraph rebase(const CoreGraph& g, int new_basepoint) {
    GraphBuilder b(g.alphabet());
    for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex();
    for (const Edge& e : g.edges()) b.add_edge(e.origin, e.terminus, e.label);
    b.trim(new_basepoint);
    int bp_out = 0;
    LabeledGraph lg = b.snapshot(new_basepoint, &bp_out);
    return CoreGraph(std::move(lg), bp_out);
}

std::optional<std::vector<int>> uv_sides(const CoreGraph& g) {
    std::vector<int> has_out(g.num_vertices(), 0), has_in(g.num_vertices(), 0);
    for (const Edge& e : g.edges()) {
        has_out[e.origin] = 1;
        has_in[e.terminus] = 1;
    }
    std::vector<int> side(g.num_vertices(), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (has_out[v] && has_in[v]) return std::nullopt;
        side[v] = has_in[v] ? 1 : 0;  // isolated basepoint counts as a source
    }
    return side;
}

std::string serialize(const CoreGraph& g) {
    std::ostringstream out;
    std::set<int> used;
    for (const Edge& e : g.edges()) used.insert(e.label);
    std::vector<std::string> used_letters;
    for (int l : used) used_letters.push_back(g.alphabet().letter(l));
    std::vector<std::string> inferred = used_letters;
    std::sort(inferred.begin(), inferred.end());
    if (inferred != g.alphabet().letters()) {
        out << "alphabet:";
        for (const auto& l : g.alphabet().letters()) out << ' ' << l;
        out << '\n';
    }
    out << "basepoint " << g.basepoint() << '\n';
    for (const Edge& e : g.edges())
        out << "edge " << e.origin << ' ' << e.terminus << ' ' << g.alphabet().letter(e.label) << '\n';
    return out.str();
}

CoreGraph deserialize(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<Alphabet> declared;
    std::optional<int> basepoint;
    std::optional<int> stated_rank;
    struct RawEdge {
        int o, t;
        std::string letter;
    };
    std::vector<RawEdge> raw;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind[0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw parse_error("graph text line " + std::to_string(lineno) + ": " + why);
        };
        if (kind == "alphabet:") {
            std::vector<std::string> ls_letters;
            std::string tok;
            while (ls >> tok) ls_letters.push_back(tok);
            if (ls_letters.empty()) fail("empty alphabet header");
            declared = Alphabet(ls_letters);
        } else if (kind == "basepoint") {
            int bp;
            if (!(ls >> bp) || bp < 0) fail("expected 'basepoint <nonnegative int>'");
            basepoint = bp;
        } else if (kind == "edge") {
            RawEdge e;
            if (!(ls >> e.o >> e.t >> e.letter) || e.o < 0 || e.t < 0)
                fail("expected 'edge <origin> <terminus> <letter>'");
            raw.push_back(e);
        } else if (kind == "rank") {
            int r;
            if (!(ls >> r) || r < 0) fail("expected 'rank <nonnegative int>'");
            stated_rank = r;
        } else if (kind == "class") {
            // Pushout class annotations are informational on input.
            continue;
        } else {
            fail("unknown record '" + kind + "'");
        }
    }
    if (!basepoint) throw parse_error("graph text has no 'basepoint' line");

    Alphabet alphabet;
    if (declared) {
        alphabet = *declared;
    } else {
        std::set<std::string> used;
        for (const auto& e : raw) used.insert(e.letter);
        if (used.empty()) used.insert("a");
        alphabet = Alphabet(std::vector<std::string>(used.begin(), used.end()));
    }

    // The vertex set is exactly the mentioned integers.
    std::map<int, int> dense;
    dense[*basepoint] = 0;
    for (const auto& e : raw) {
        dense.emplace(e.o, 0);
        dense.emplace(e.t, 0);
    }
    int next_id = 0;
    for (auto& [orig, id] : dense) id = next_id++;
    LabeledGraph g;
    g.alphabet = alphabet;
    g.num_vertices = next_id;
    for (const auto& e : raw) {
        int l = alphabet.index_of(e.letter);
        if (l < 0) throw parse_error("edge letter '" + e.letter + "' is not in the alphabet");
        g.edges.push_back({dense[e.o], dense[e.t], l});
    }
    try {
        CoreGraph result(std::move(g), dense[*basepoint]);
        if (stated_rank && *stated_rank != rank(result))
            throw parse_error("stated rank " + std::to_string(*stated_rank) +
                              " does not match the graph (rank " + std::to_string(rank(result)) +
                              ")");
        return result;
    } catch (const invariant_violation& e) {
        throw parse_error(std::string("graph text does not describe a core graph: ") + e.what());
    }
}

}  // namespace stallings
