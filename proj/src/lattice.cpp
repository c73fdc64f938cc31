#include "stallings/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "stallings/errors.hpp"

namespace stallings {

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

}  // namespace

PullbackResult pullback(const CoreGraph& H, const CoreGraph& K) {
    if (!(H.alphabet() == K.alphabet()))
        throw precondition_error("pullback needs a shared alphabet");
    const int nletters = H.alphabet().size();

    std::map<std::pair<int, int>, int> id_of;
    std::vector<std::pair<int, int>> vpairs;
    auto intern = [&](int p, int q) {
        auto [it, inserted] = id_of.try_emplace({p, q}, static_cast<int>(vpairs.size()));
        if (inserted) vpairs.push_back({p, q});
        return it->second;
    };

    struct ProdEdge {
        int o, t, label;
        int eh, ek;
    };
    std::vector<ProdEdge> pedges;

    // Breadth-first over compatible edge pairs from (x_H, x_K); each product
    // edge is emitted exactly once, when its origin is processed.
    intern(H.basepoint(), K.basepoint());
    std::size_t processed = 0;
    while (processed < vpairs.size()) {
        int id = static_cast<int>(processed++);
        auto [p, q] = vpairs[id];
        for (int l = 0; l < nletters; ++l) {
            int ph = H.out_vertex(p, l), qk = K.out_vertex(q, l);
            if (ph >= 0 && qk >= 0) {
                int nid = intern(ph, qk);
                pedges.push_back({id, nid, l, H.out_edge(p, l), K.out_edge(q, l)});
            }
            int bh = H.in_vertex(p, l), bk = K.in_vertex(q, l);
            if (bh >= 0 && bk >= 0) intern(bh, bk);
        }
    }

    // Trim hanging trees (basepoint excepted), keeping projection data.
    int n = static_cast<int>(vpairs.size());
    std::vector<bool> vertex_alive(n, true);
    std::vector<bool> edge_alive(pedges.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> valence(n, 0);
        for (std::size_t i = 0; i < pedges.size(); ++i)
            if (edge_alive[i]) {
                valence[pedges[i].o]++;
                valence[pedges[i].t]++;
            }
        for (int v = 1; v < n; ++v) {
            if (vertex_alive[v] && valence[v] <= 1) {
                vertex_alive[v] = false;
                for (std::size_t i = 0; i < pedges.size(); ++i)
                    if (edge_alive[i] && (pedges[i].o == v || pedges[i].t == v)) edge_alive[i] = false;
                changed = true;
            }
        }
    }

    std::vector<int> compact(n, -1);
    int nv = 0;
    for (int v = 0; v < n; ++v)
        if (vertex_alive[v]) compact[v] = nv++;

    LabeledGraph lg;
    lg.alphabet = H.alphabet();
    lg.num_vertices = nv;
    std::vector<std::pair<int, int>> edge_proj;
    for (std::size_t i = 0; i < pedges.size(); ++i)
        if (edge_alive[i]) {
            lg.edges.push_back({compact[pedges[i].o], compact[pedges[i].t], pedges[i].label});
            edge_proj.push_back({pedges[i].eh, pedges[i].ek});
        }

    Canonicalization canon;
    CoreGraph meet(std::move(lg), 0, &canon);

    PullbackResult out{std::move(meet), {}, {}};
    out.vertex_pair.resize(nv);
    for (int v = 0; v < n; ++v)
        if (vertex_alive[v]) out.vertex_pair[canon.vertex_map[compact[v]]] = vpairs[v];
    out.edge_pair.resize(edge_proj.size());
    for (std::size_t i = 0; i < edge_proj.size(); ++i)
        out.edge_pair[canon.edge_map[i]] = edge_proj[i];
    return out;
}

CoreGraph join(const CoreGraph& H, const CoreGraph& K) {
    if (!(H.alphabet() == K.alphabet()))
        throw precondition_error("join needs a shared alphabet");
    GraphBuilder b(H.alphabet());
    for (int v = 0; v < H.num_vertices(); ++v) b.add_vertex();
    // Wedge at the basepoints: K's basepoint lands on H's.
    std::vector<int> kmap(K.num_vertices(), -1);
    kmap[K.basepoint()] = H.basepoint();
    for (int v = 0; v < K.num_vertices(); ++v)
        if (kmap[v] < 0) kmap[v] = b.add_vertex();
    for (const Edge& e : H.edges()) b.add_edge(e.origin, e.terminus, e.label);
    for (const Edge& e : K.edges()) b.add_edge(kmap[e.origin], kmap[e.terminus], e.label);
    b.fold();
    b.trim(H.basepoint());
    int bp_out = 0;
    LabeledGraph lg = b.snapshot(H.basepoint(), &bp_out);
    return CoreGraph(std::move(lg), bp_out);
}

int PushoutGraph::rank() const {
    return static_cast<int>(graph.edges.size()) - graph.num_vertices + 1;
}

PushoutGraph pushout(const CoreGraph& H, const CoreGraph& K, const PullbackResult& pb) {
    int nvh = H.num_vertices(), nvk = K.num_vertices();
    int neh = H.num_edges(), nek = K.num_edges();
    Dsu vd(nvh + nvk), ed(neh + nek);
    // Basepoints fall into one class even when the meet is trivial: the
    // meet's basepoint is the pair (x_H, x_K).
    for (const auto& [p, q] : pb.vertex_pair) vd.unite(p, nvh + q);
    for (const auto& [eh, ek] : pb.edge_pair) ed.unite(eh, neh + ek);

    // Class ids in order of the smallest member, H elements before K.
    auto class_ids = [](Dsu& d, int universe) {
        std::map<int, int> first_member;
        for (int v = 0; v < universe; ++v) first_member.try_emplace(d.find(v), v);
        std::vector<std::pair<int, int>> order;  // (first member, root)
        for (auto& [root, mn] : first_member) order.push_back({mn, root});
        std::sort(order.begin(), order.end());
        std::map<int, int> id;
        for (std::size_t i = 0; i < order.size(); ++i) id[order[i].second] = static_cast<int>(i);
        return id;
    };
    std::map<int, int> vclass_id = class_ids(vd, nvh + nvk);
    std::map<int, int> eclass_id = class_ids(ed, neh + nek);

    PushoutGraph t;
    t.graph.alphabet = H.alphabet();
    t.graph.num_vertices = static_cast<int>(vclass_id.size());
    t.vclass_H.resize(nvh);
    t.vclass_K.resize(nvk);
    for (int v = 0; v < nvh; ++v) t.vclass_H[v] = vclass_id[vd.find(v)];
    for (int v = 0; v < nvk; ++v) t.vclass_K[v] = vclass_id[vd.find(nvh + v)];
    t.basepoint = t.vclass_H[H.basepoint()];

    int num_eclasses = static_cast<int>(eclass_id.size());
    t.eclass_H.resize(neh);
    t.eclass_K.resize(nek);
    for (int e = 0; e < neh; ++e) t.eclass_H[e] = eclass_id[ed.find(e)];
    for (int e = 0; e < nek; ++e) t.eclass_K[e] = eclass_id[ed.find(neh + e)];

    std::vector<Edge> qedges(num_eclasses);
    std::vector<bool> filled(num_eclasses, false);
    auto place = [&](int cls, Edge e) {
        if (!filled[cls]) {
            qedges[cls] = e;
            filled[cls] = true;
        } else if (!(qedges[cls] == e)) {
            throw invariant_violation("pushout edge class has inconsistent endpoints");
        }
    };
    for (int e = 0; e < neh; ++e) {
        const Edge& he = H.edge(e);
        place(t.eclass_H[e], {t.vclass_H[he.origin], t.vclass_H[he.terminus], he.label});
    }
    for (int e = 0; e < nek; ++e) {
        const Edge& ke = K.edge(e);
        place(t.eclass_K[e], {t.vclass_K[ke.origin], t.vclass_K[ke.terminus], ke.label});
    }
    t.graph.edges = std::move(qedges);
    return t;
}

std::string serialize(const PushoutGraph& t) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& l : t.graph.alphabet.letters()) out << ' ' << l;
    out << '\n';
    out << "basepoint " << t.basepoint << '\n';
    std::vector<Edge> sorted = t.graph.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const Edge& e : sorted)
        out << "edge " << e.origin << ' ' << e.terminus << ' ' << t.graph.alphabet.letter(e.label)
            << '\n';
    // Class membership: which input cells were glued together.
    std::vector<std::vector<std::string>> vmembers(t.graph.num_vertices);
    for (std::size_t v = 0; v < t.vclass_H.size(); ++v)
        vmembers[t.vclass_H[v]].push_back("H" + std::to_string(v));
    for (std::size_t v = 0; v < t.vclass_K.size(); ++v)
        vmembers[t.vclass_K[v]].push_back("K" + std::to_string(v));
    for (int c = 0; c < t.graph.num_vertices; ++c) {
        out << "class v" << c;
        for (const auto& m : vmembers[c]) out << ' ' << m;
        out << '\n';
    }
    std::vector<std::vector<std::string>> emembers(t.graph.edges.size());
    for (std::size_t e = 0; e < t.eclass_H.size(); ++e)
        emembers[t.eclass_H[e]].push_back("H" + std::to_string(e));
    for (std::size_t e = 0; e < t.eclass_K.size(); ++e)
        emembers[t.eclass_K[e]].push_back("K" + std::to_string(e));
    for (std::size_t c = 0; c < emembers.size(); ++c) {
        out << "class e" << c;
        for (const auto& m : emembers[c]) out << ' ' << m;
        out << '\n';
    }
    out << "rank " << t.rank() << '\n';
    return out.str();
}

std::string to_string(const RankProfile& p) {
    std::ostringstream out;
    out << '(' << p.h << ',' << p.k << ',' << p.v << ',' << p.c << ')';
    return out.str();
}

RankProfile rank_profile(const CoreGraph& H, const CoreGraph& K) {
    RankProfile p;
    p.h = rank(H);
    p.k = rank(K);
    p.c = rank(pullback(H, K).meet);
    p.v = rank(join(H, K));
    if (reduced_rank(p.c) > reduced_rank(p.h) * reduced_rank(p.k))
        throw invariant_violation("Hanna Neumann bound violated by " + to_string(p) +
                                  "; this falsifies a theorem, so it is a bug");
    if (p.v == p.h + p.k && p.c != 0)
        throw invariant_violation("Hopfian rule violated by " + to_string(p) +
                                  ": v = h + k forces a trivial intersection");
    return p;
}

RankProfile rank_profile(const std::vector<Word>& H_gens, const std::vector<Word>& K_gens,
                         const Alphabet& alphabet) {
    return rank_profile(build_core_graph(H_gens, alphabet), build_core_graph(K_gens, alphabet));
}

NormalizedPair normalize_pair(const CoreGraph& H, const CoreGraph& K) {
    PullbackResult pb = pullback(H, K);
    if (rank(pb.meet) == 0)
        throw precondition_error(
            "normalize_pair requires a nontrivial intersection H ∩ K ≠ 1, "
            "but the pullback core is a single point");

    const CoreGraph& m = pb.meet;
    if (m.valence(m.basepoint()) >= 2)
        return {H, K, Word()};  // nothing to prove

    // Shortest path from the basepoint to a valence-3 vertex; one exists
    // because the meet has a circuit the hanging basepoint is not on.
    std::vector<int> prev_vertex(m.num_vertices(), -1);
    std::vector<Syllable> prev_step(m.num_vertices());
    std::deque<int> queue{m.basepoint()};
    std::vector<bool> seen(m.num_vertices(), false);
    seen[m.basepoint()] = true;
    int target = -1;
    while (!queue.empty() && target < 0) {
        int v = queue.front();
        queue.pop_front();
        if (m.valence(v) >= 3) {
            target = v;
            break;
        }
        for (int l = 0; l < m.alphabet().size(); ++l) {
            int w = m.out_vertex(v, l);
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                prev_vertex[w] = v;
                prev_step[w] = {m.alphabet().letter(l), 1};
                queue.push_back(w);
            }
            w = m.in_vertex(v, l);
            if (w >= 0 && !seen[w]) {
                seen[w] = true;
                prev_vertex[w] = v;
                prev_step[w] = {m.alphabet().letter(l), -1};
                queue.push_back(w);
            }
        }
    }
    if (target < 0)
        throw invariant_violation("nontrivial meet without a valence-3 vertex cannot happen");

    std::vector<Syllable> rev;
    for (int v = target; v != m.basepoint(); v = prev_vertex[v]) rev.push_back(prev_step[v]);
    std::reverse(rev.begin(), rev.end());
    Word path_label(std::move(rev));

    auto [qH, qK] = pb.vertex_pair[target];
    return {rebase(H, qH), rebase(K, qK), invert(path_label)};
}

}  // namespace stallings
