#include "stallings/dicks.hpp"

#include <algorithm>
#include <functional>
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

    // Contiguous component ids in order of the smallest member.
    std::pair<std::vector<int>, int> components() {
        int n = static_cast<int>(parent_.size());
        std::vector<int> id(n, -1);
        int next = 0;
        for (int v = 0; v < n; ++v) {
            int r = find(v);
            if (id[r] < 0) id[r] = next++;
        }
        std::vector<int> out(n);
        for (int v = 0; v < n; ++v) out[v] = id[find(v)];
        return {out, next};
    }

  private:
    std::vector<int> parent_;
};

int popcount3(unsigned tags) { return (tags & 1u) + ((tags >> 1) & 1u) + ((tags >> 2) & 1u); }

constexpr unsigned kAllTags = 0b111u;

unsigned star_tags(const CoreGraph& g, int v) {
    unsigned tags = 0;
    for (int l = 0; l < g.alphabet().size(); ++l)
        if (g.out_vertex(v, l) >= 0 || g.in_vertex(v, l) >= 0) tags |= 1u << l;
    return tags;
}

}  // namespace

DicksBundle::DicksBundle(CoreGraph H, CoreGraph K, PullbackResult pb)
    : H_(std::move(H)), K_(std::move(K)), pb_(std::move(pb)) {
    nvh_ = H_.num_vertices();
    nvk_ = K_.num_vertices();
    neh_ = H_.num_edges();
    nek_ = K_.num_edges();

    if (H_.alphabet().size() != 3 || !(H_.alphabet() == K_.alphabet()))
        throw domain_error("the Dicks decomposition needs both graphs over the 3-letter scheme; "
                           "embed 2-letter inputs with theta_embed first");
    auto sides_H = uv_sides(H_);
    auto sides_K = uv_sides(K_);
    if (!sides_H || !sides_K)
        throw domain_error("input graph is not two-colorable into sources and sinks; "
                           "embed the subgroup through theta_embed first");

    auto check_valences = [](const CoreGraph& g, const char* name) {
        for (int v = 0; v < g.num_vertices(); ++v) {
            int val = g.valence(v);
            if (val < 2 || val > 3)
                throw precondition_error(std::string(name) + " has a vertex of valence " +
                                         std::to_string(val) +
                                         "; normalize the pair first (all valences must be 2 or 3)");
        }
    };
    check_valences(H_, "the H graph");
    check_valences(K_, "the K graph");
    check_valences(pb_.meet, "the pullback core");

    vcover_.assign(nvh_ + nvk_, 0);
    vtags_.assign(nvh_ + nvk_, 0);
    for (int v = 0; v < nvh_; ++v) {
        vcover_[gid_H(v)] = (*sides_H)[v];
        vtags_[gid_H(v)] = star_tags(H_, v);
    }
    for (int v = 0; v < nvk_; ++v) {
        vcover_[gid_K(v)] = (*sides_K)[v];
        vtags_[gid_K(v)] = star_tags(K_, v);
    }

    const CoreGraph& m = pb_.meet;
    mcover_.assign(m.num_vertices(), 0);
    mtags_.assign(m.num_vertices(), 0);
    for (int mv = 0; mv < m.num_vertices(); ++mv) {
        int side_h = (*sides_H)[pb_.vertex_pair[mv].first];
        int side_k = (*sides_K)[pb_.vertex_pair[mv].second];
        if (side_h != side_k)
            throw invariant_violation("pullback vertex covers different base cells on both sides");
        mcover_[mv] = side_h;
        mtags_[mv] = star_tags(m, mv);
    }

    // Components of Omega: all Gamma-vertices, joined by pullback vertices.
    {
        Dsu d(nvh_ + nvk_);
        for (int mv = 0; mv < m.num_vertices(); ++mv)
            d.unite(edge_endpoint_H(mv), edge_endpoint_K(mv));
        auto [ids, count] = d.components();
        omega_comp_ = std::move(ids);
        num_omega_comps_ = count;
    }

    // Components of Omega_a, Omega_b, Omega_c on Gamma-edges, joined by
    // pullback edges; unions never cross labels.
    {
        Dsu d(neh_ + nek_);
        for (int me = 0; me < m.num_edges(); ++me) {
            auto [eh, ek] = pb_.edge_pair[me];
            d.unite(eh, neh_ + ek);
        }
        auto [raw_ids, raw_count] = d.components();
        // Renumber contiguously per letter.
        std::vector<int> letter_of_comp(raw_count, -1);
        for (int ge = 0; ge < neh_ + nek_; ++ge) letter_of_comp[raw_ids[ge]] = gedge_label(ge);
        letter_comp_.assign(neh_ + nek_, -1);
        std::array<std::vector<int>, 3> renumber;
        for (int l = 0; l < 3; ++l) renumber[l].assign(raw_count, -1);
        std::array<int, 3> counts{0, 0, 0};
        for (int ge = 0; ge < neh_ + nek_; ++ge) {
            int l = gedge_label(ge);
            int& slot = renumber[l][raw_ids[ge]];
            if (slot < 0) slot = counts[l]++;
        }
        letter_comp_count_ = counts;
        letter_comp_offset_ = {0, counts[0], counts[0] + counts[1]};
        for (int ge = 0; ge < neh_ + nek_; ++ge) {
            int l = gedge_label(ge);
            letter_comp_[ge] = letter_comp_offset_[l] + renumber[l][raw_ids[ge]];
        }
    }

    // Components of Omega_abc: 3-tagged vertices joined by 3-tagged edges.
    {
        Dsu d(nvh_ + nvk_);
        for (int mv = 0; mv < m.num_vertices(); ++mv)
            if (mtags_[mv] == kAllTags) d.unite(edge_endpoint_H(mv), edge_endpoint_K(mv));
        abc_comp_.assign(nvh_ + nvk_, -1);
        std::map<int, int> ids;
        for (int gid = 0; gid < nvh_ + nvk_; ++gid) {
            if (vtags_[gid] != kAllTags) continue;
            int r = d.find(gid);
            auto [it, inserted] = ids.try_emplace(r, static_cast<int>(ids.size()));
            abc_comp_[gid] = it->second;
            if (vertex_is_H(gid))
                ++abc_vh_;
            else
                ++abc_vk_;
        }
        num_abc_comps_ = static_cast<int>(ids.size());
        for (int mv = 0; mv < m.num_vertices(); ++mv)
            if (mtags_[mv] == kAllTags) ++abc_edges_;
    }
}

std::string DicksBundle::vertex_name(int gid) const {
    return (vertex_is_H(gid) ? "H" : "K") + std::to_string(local_vertex(gid));
}

const Edge& DicksBundle::gedge(int ge) const {
    return ge < neh_ ? H_.edge(ge) : K_.edge(ge - neh_);
}

int DicksBundle::o_embed(int ge) const {
    const Edge& e = gedge(ge);
    return gedge_is_H(ge) ? gid_H(e.origin) : gid_K(e.origin);
}

int DicksBundle::t_embed(int ge) const {
    const Edge& e = gedge(ge);
    return gedge_is_H(ge) ? gid_H(e.terminus) : gid_K(e.terminus);
}

std::string DicksBundle::gedge_name(int ge) const {
    const Edge& e = gedge(ge);
    std::string g = gedge_is_H(ge) ? "H" : "K";
    return g + std::to_string(e.origin) + "." + H_.alphabet().letter(e.label);
}

DicksBundle build_dicks(const CoreGraph& H, const CoreGraph& K, const PullbackResult& pb) {
    return DicksBundle(H, K, pb);
}

DualityReport check_duality(const DicksBundle& b) {
    const CoreGraph& m = b.pb().meet;

    // Components of Omega_{u,l} and Omega_{v,l} computed directly from tags.
    auto side_components = [&](int letter, int cover) {
        Dsu d(b.num_omega_vertices());
        for (int mv = 0; mv < m.num_vertices(); ++mv) {
            if (b.edge_cover(mv) != cover || !(b.edge_tags(mv) & (1u << letter))) continue;
            d.unite(b.edge_endpoint_H(mv), b.edge_endpoint_K(mv));
        }
        std::map<int, std::vector<int>> comps;  // root -> members
        for (int gid = 0; gid < b.num_omega_vertices(); ++gid)
            if (b.vertex_cover(gid) == cover && (b.vertex_tags(gid) & (1u << letter)))
                comps[d.find(gid)].push_back(gid);
        return comps;
    };

    DualityReport report;
    for (int l = 0; l < 3; ++l) {
        auto u_comps = side_components(l, 0);
        auto v_comps = side_components(l, 1);
        std::map<int, int> u_comp_of, v_comp_of;  // gid -> root
        for (auto& [root, members] : u_comps)
            for (int gid : members) u_comp_of[gid] = root;
        for (auto& [root, members] : v_comps)
            for (int gid : members) v_comp_of[gid] = root;

        // Group Gamma-edges by Omega_letter component.
        std::map<int, std::vector<int>> groups;
        for (int ge = 0; ge < b.num_gamma_edges(); ++ge)
            if (b.gedge_label(ge) == l) groups[b.letter_component(ge)].push_back(ge);

        int expected_pairs = static_cast<int>(groups.size());
        if (static_cast<int>(u_comps.size()) != expected_pairs ||
            static_cast<int>(v_comps.size()) != expected_pairs)
            throw invariant_violation("duality failed: side component counts do not match the "
                                      "letter-graph components");
        report.component_counts[l] = 2 * expected_pairs;

        for (auto& [comp_id, ges] : groups) {
            DualPair pair;
            pair.letter = l;
            std::set<int> u_roots, v_roots;
            for (int ge : ges) {
                int ug = b.o_embed(ge), vg = b.t_embed(ge);
                pair.u_vertices.push_back(ug);
                pair.v_vertices.push_back(vg);
                pair.iso.push_back({ug, vg});
                u_roots.insert(u_comp_of.at(ug));
                v_roots.insert(v_comp_of.at(vg));
                if (b.vertex_is_H(ug) != b.vertex_is_H(vg))
                    throw invariant_violation("duality failed: pairing does not preserve the "
                                              "bipartite structure");
            }
            std::sort(pair.u_vertices.begin(), pair.u_vertices.end());
            std::sort(pair.v_vertices.begin(), pair.v_vertices.end());
            std::sort(pair.iso.begin(), pair.iso.end());
            // The o-image must be one whole u-side component, likewise t.
            if (u_roots.size() != 1 || v_roots.size() != 1 ||
                u_comps.at(*u_roots.begin()).size() != pair.u_vertices.size() ||
                v_comps.at(*v_roots.begin()).size() != pair.v_vertices.size())
                throw invariant_violation("duality failed: embedded image is not a full component");
            // Injectivity of the realized bijection.
            for (std::size_t i = 1; i < pair.iso.size(); ++i)
                if (pair.iso[i].first == pair.iso[i - 1].first)
                    throw invariant_violation("duality failed: origin embedding not injective");

            report.pairs.push_back(std::move(pair));
        }
    }

    // Edge transport consistency: a pullback edge sends the endpoints of its
    // origin cell to the endpoints of its terminus cell.
    for (int me = 0; me < m.num_edges(); ++me) {
        const Edge& e = m.edge(me);
        auto [eh, ek] = b.pb().edge_pair[me];
        const Edge& he = b.H().edge(eh);
        const Edge& ke = b.K().edge(ek);
        if (b.pb().vertex_pair[e.origin] != std::make_pair(he.origin, ke.origin) ||
            b.pb().vertex_pair[e.terminus] != std::make_pair(he.terminus, ke.terminus))
            throw invariant_violation("duality failed: edge transport is inconsistent");
    }
    return report;
}

PushoutGraph pushout_from_dicks(const DicksBundle& b) {
    PushoutGraph t;
    t.graph.alphabet = b.H().alphabet();
    t.graph.num_vertices = b.num_omega_components();
    t.vclass_H.resize(b.H().num_vertices());
    t.vclass_K.resize(b.K().num_vertices());
    for (int v = 0; v < b.H().num_vertices(); ++v) t.vclass_H[v] = b.omega_component(b.gid_H(v));
    for (int v = 0; v < b.K().num_vertices(); ++v) t.vclass_K[v] = b.omega_component(b.gid_K(v));
    t.basepoint = t.vclass_H[b.H().basepoint()];

    int total_eclasses = b.num_letter_components(0) + b.num_letter_components(1) +
                         b.num_letter_components(2);
    t.eclass_H.resize(b.H().num_edges());
    t.eclass_K.resize(b.K().num_edges());
    std::vector<Edge> edges(total_eclasses);
    std::vector<bool> filled(total_eclasses, false);
    for (int ge = 0; ge < b.num_gamma_edges(); ++ge) {
        int cls = b.letter_component(ge);
        Edge e{b.omega_component(b.o_embed(ge)), b.omega_component(b.t_embed(ge)),
               b.gedge_label(ge)};
        if (!filled[cls]) {
            edges[cls] = e;
            filled[cls] = true;
        } else if (!(edges[cls] == e)) {
            throw invariant_violation("dicks pushout: a letter component straddles two vertex "
                                      "components");
        }
        if (b.gedge_is_H(ge))
            t.eclass_H[ge] = cls;
        else
            t.eclass_K[ge - b.H().num_edges()] = cls;
    }
    t.graph.edges = std::move(edges);
    return t;
}

bool compare_pushouts(const PushoutGraph& lhs, const PushoutGraph& rhs) {
    if (lhs.graph.num_vertices != rhs.graph.num_vertices) return false;
    if (lhs.graph.edges.size() != rhs.graph.edges.size()) return false;
    if (lhs.vclass_H.size() != rhs.vclass_H.size() || lhs.vclass_K.size() != rhs.vclass_K.size() ||
        lhs.eclass_H.size() != rhs.eclass_H.size() || lhs.eclass_K.size() != rhs.eclass_K.size())
        return false;

    // The class partitions must agree cell for cell; build the dictionary.
    std::map<int, int> vmap, emap;
    auto bind = [](std::map<int, int>& m, int a, int b) {
        auto [it, inserted] = m.try_emplace(a, b);
        return it->second == b;
    };
    for (std::size_t v = 0; v < lhs.vclass_H.size(); ++v)
        if (!bind(vmap, lhs.vclass_H[v], rhs.vclass_H[v])) return false;
    for (std::size_t v = 0; v < lhs.vclass_K.size(); ++v)
        if (!bind(vmap, lhs.vclass_K[v], rhs.vclass_K[v])) return false;
    for (std::size_t e = 0; e < lhs.eclass_H.size(); ++e)
        if (!bind(emap, lhs.eclass_H[e], rhs.eclass_H[e])) return false;
    for (std::size_t e = 0; e < lhs.eclass_K.size(); ++e)
        if (!bind(emap, lhs.eclass_K[e], rhs.eclass_K[e])) return false;
    if (vmap.size() != static_cast<std::size_t>(lhs.graph.num_vertices)) return false;
    std::set<int> vimage, eimage;
    for (auto& [a, b2] : vmap) vimage.insert(b2);
    for (auto& [a, b2] : emap) eimage.insert(b2);
    if (vimage.size() != vmap.size() || eimage.size() != emap.size()) return false;

    for (auto& [le, re] : emap) {
        const Edge& a = lhs.graph.edges[le];
        const Edge& b2 = rhs.graph.edges[re];
        if (a.label != b2.label || vmap[a.origin] != b2.origin || vmap[a.terminus] != b2.terminus)
            return false;
    }
    return vmap[lhs.basepoint] == rhs.basepoint;
}

ColoredMultigraph build_ccg(const DicksBundle& b) {
    const CoreGraph& m = b.pb().meet;
    const int n = b.num_abc_components();
    auto is_abc_vertex = [&](int gid) { return b.abc_component(gid) >= 0; };

    std::set<ColoredEdge> edges;
    // Colors keyed to the two-letter subgraphs: ab, ac, bc.
    const std::array<std::pair<unsigned, Color>, 3> schemes = {{
        {0b011u, Color::magenta},  // Omega_ab
        {0b101u, Color::yellow},   // Omega_ac
        {0b110u, Color::cyan},     // Omega_bc
    }};
    for (auto [tags, color] : schemes) {
        // Blobs: components of the tissue outside Omega_abc.
        Dsu blob(b.num_omega_vertices());
        for (int mv = 0; mv < m.num_vertices(); ++mv) {
            if (b.edge_tags(mv) != tags) continue;
            int x = b.edge_endpoint_H(mv), y = b.edge_endpoint_K(mv);
            if (!is_abc_vertex(x) && !is_abc_vertex(y)) blob.unite(x, y);
        }
        std::map<int, std::set<int>> touched;  // blob root -> abc components adjacent
        for (int mv = 0; mv < m.num_vertices(); ++mv) {
            if (b.edge_tags(mv) != tags) continue;
            int x = b.edge_endpoint_H(mv), y = b.edge_endpoint_K(mv);
            bool ax = is_abc_vertex(x), ay = is_abc_vertex(y);
            if (ax && ay) {
                int p = b.abc_component(x), q = b.abc_component(y);
                if (p != q) edges.insert({std::min(p, q), std::max(p, q), color});
            } else if (ax) {
                touched[blob.find(y)].insert(b.abc_component(x));
            } else if (ay) {
                touched[blob.find(x)].insert(b.abc_component(y));
            }
        }
        for (auto& [root, comps] : touched)
            for (auto it = comps.begin(); it != comps.end(); ++it)
                for (auto jt = std::next(it); jt != comps.end(); ++jt)
                    edges.insert({*it, *jt, color});
    }
    return ColoredMultigraph(n, std::vector<ColoredEdge>(edges.begin(), edges.end()));
}

bool omega_cycles_confined(const DicksBundle& b) {
    const CoreGraph& m = b.pb().meet;
    std::vector<std::pair<int, int>> plain;
    plain.reserve(m.num_vertices());
    for (int mv = 0; mv < m.num_vertices(); ++mv)
        plain.push_back({b.edge_endpoint_H(mv), b.edge_endpoint_K(mv)});
    for (const auto& block : biconnected_blocks(b.num_omega_vertices(), plain)) {
        if (block.size() < 2) continue;
        unsigned two_tag_type = 0;
        for (int mv : block) {
            unsigned tags = b.edge_tags(mv);
            if (tags == kAllTags) continue;
            if (two_tag_type == 0)
                two_tag_type = tags;
            else if (two_tag_type != tags)
                return false;  // block carries a cycle through mixed tags
        }
    }
    return true;
}

Theorem43Report theorem43_report(const DicksBundle& b, const RankProfile& profile) {
    Theorem43Report r;
    r.abc_vertices_H = b.abc_vertices_H_side();
    r.abc_vertices_K = b.abc_vertices_K_side();
    r.expected_H = 2 * reduced_rank(profile.h);
    r.expected_K = 2 * reduced_rank(profile.k);
    r.abc_edges = b.abc_edge_count();
    r.expected_edges = 2 * reduced_rank(profile.c);
    r.abc_components = b.num_abc_components();
    r.two_rr_T = 2 * reduced_rank(pushout_from_dicks(b).rank());
    r.equality = (r.abc_components == r.two_rr_T);
    r.cycles_confined = omega_cycles_confined(b);
    ColoredMultigraph ccg = build_ccg(b);
    r.ccg_monochromatic = !has_nonmonochromatic_cycle(ccg);
    r.sigma_ccg = sigma(ccg);

    std::ostringstream why;
    bool ok = true;
    if (r.abc_vertices_H != r.expected_H || r.abc_vertices_K != r.expected_K) {
        ok = false;
        why << "part1: abc part sizes (" << r.abc_vertices_H << "," << r.abc_vertices_K
            << ") != (" << r.expected_H << "," << r.expected_K << "); ";
    }
    if (r.abc_edges != r.expected_edges) {
        ok = false;
        why << "part2: abc edges " << r.abc_edges << " != " << r.expected_edges << "; ";
    }
    if (r.abc_components < r.two_rr_T) {
        ok = false;
        why << "part3: components " << r.abc_components << " < 2rr(T) = " << r.two_rr_T << "; ";
    }
    if (r.equality != r.ccg_monochromatic) {
        ok = false;
        why << "part3 equality criterion mismatch (equality=" << r.equality
            << ", ccg_mono=" << r.ccg_monochromatic << "); ";
    }
    if (r.cycles_confined && !r.equality) {
        ok = false;
        why << "confined cycles must force equality; ";
    }
    if (r.sigma_ccg != r.two_rr_T) {
        ok = false;
        why << "sigma(CCG) = " << r.sigma_ccg << " != 2rr(T) = " << r.two_rr_T << "; ";
    }
    r.ok = ok;
    r.detail = why.str();
    return r;
}

int SigGraph::odd_valence_count() const {
    int odd = 0;
    for (const auto& v : vertices)
        if (v.valence % 2 == 1) ++odd;
    return odd;
}

SigGraph build_sig(const DicksBundle& b, int s, int t) {
    if (s < 1 || t < 1) throw domain_error("the complete bipartite shape needs s, t >= 1");
    const CoreGraph& m = b.pb().meet;

    // Adjacency per letter within each cover: (H gid, K gid) pairs present
    // in the tagged subgraph.
    std::array<std::set<std::pair<int, int>>, 3> adj;
    for (int mv = 0; mv < m.num_vertices(); ++mv)
        for (int l = 0; l < 3; ++l)
            if (b.edge_tags(mv) & (1u << l))
                adj[l].insert({b.edge_endpoint_H(mv), b.edge_endpoint_K(mv)});

    std::map<std::pair<std::vector<int>, std::vector<int>>, unsigned> copies;

    std::vector<std::pair<int, int>> orientations{{s, t}};
    if (s != t) orientations.push_back({t, s});

    for (int cover = 0; cover < 2; ++cover) {
        for (int l = 0; l < 3; ++l) {
            std::vector<int> cand_H, cand_K;
            for (int gid = 0; gid < b.num_omega_vertices(); ++gid) {
                if (b.vertex_cover(gid) != cover || !(b.vertex_tags(gid) & (1u << l))) continue;
                (b.vertex_is_H(gid) ? cand_H : cand_K).push_back(gid);
            }
            for (auto [sh, sk] : orientations) {
                if (static_cast<int>(cand_H.size()) < sh || static_cast<int>(cand_K.size()) < sk)
                    continue;
                // Enumerate H-side subsets, intersect neighborhoods, then
                // pick K-side subsets of the common neighborhood.
                std::vector<int> pick;
                std::function<void(std::size_t, std::vector<int>&)> rec =
                    [&](std::size_t start, std::vector<int>& common) {
                        if (static_cast<int>(pick.size()) == sh) {
                            if (static_cast<int>(common.size()) < sk) return;
                            std::vector<int> kpick;
                            std::function<void(std::size_t)> reck = [&](std::size_t kstart) {
                                if (static_cast<int>(kpick.size()) == sk) {
                                    copies[{pick, kpick}] |= 1u << l;
                                    return;
                                }
                                for (std::size_t j = kstart; j < common.size(); ++j) {
                                    kpick.push_back(common[j]);
                                    reck(j + 1);
                                    kpick.pop_back();
                                }
                            };
                            reck(0);
                            return;
                        }
                        for (std::size_t i = start; i < cand_H.size(); ++i) {
                            std::vector<int> next_common;
                            if (pick.empty()) {
                                for (int kg : cand_K)
                                    if (adj[l].count({cand_H[i], kg})) next_common.push_back(kg);
                            } else {
                                for (int kg : common)
                                    if (adj[l].count({cand_H[i], kg})) next_common.push_back(kg);
                            }
                            if (static_cast<int>(next_common.size()) >= sk) {
                                pick.push_back(cand_H[i]);
                                rec(i + 1, next_common);
                                pick.pop_back();
                            }
                        }
                    };
                std::vector<int> empty_common;
                rec(0, empty_common);
            }
        }
    }

    SigGraph sig;
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index_of;
    for (auto& [key, members] : copies) {
        SigVertex v;
        v.part_H = key.first;
        v.part_K = key.second;
        v.members = members;
        v.valence = popcount3(members);
        index_of[key] = static_cast<int>(sig.vertices.size());
        sig.vertices.push_back(std::move(v));
    }

    // Transport each u-side copy along the unique out-edge per letter.
    for (auto& [key, members] : copies) {
        int probe = key.first.empty() ? key.second.front() : key.first.front();
        if (b.vertex_cover(probe) != 0) continue;
        for (int l = 0; l < 3; ++l) {
            if (!(members & (1u << l))) continue;
            auto transport = [&](int gid) {
                if (b.vertex_is_H(gid)) {
                    int to = b.H().out_vertex(b.local_vertex(gid), l);
                    if (to < 0) throw invariant_violation("sig transport fell off the graph");
                    return b.gid_H(to);
                }
                int to = b.K().out_vertex(b.local_vertex(gid), l);
                if (to < 0) throw invariant_violation("sig transport fell off the graph");
                return b.gid_K(to);
            };
            std::vector<int> img_H, img_K;
            for (int gid : key.first) img_H.push_back(transport(gid));
            for (int gid : key.second) img_K.push_back(transport(gid));
            std::sort(img_H.begin(), img_H.end());
            std::sort(img_K.begin(), img_K.end());
            auto it = index_of.find({img_H, img_K});
            if (it == index_of.end())
                throw invariant_violation("sig transport image is not a copy; the embedding "
                                          "isomorphism must carry copies to copies");
            sig.edges.push_back({index_of[key], it->second, l});
        }
    }
    std::sort(sig.edges.begin(), sig.edges.end(), [](const SigEdge& a, const SigEdge& b2) {
        if (a.from != b2.from) return a.from < b2.from;
        if (a.label != b2.label) return a.label < b2.label;
        return a.to < b2.to;
    });
    return sig;
}

namespace {

std::string join_names(const DicksBundle& b, std::vector<int> gids) {
    std::sort(gids.begin(), gids.end());
    std::string out;
    for (std::size_t i = 0; i < gids.size(); ++i) {
        if (i) out += ' ';
        out += b.vertex_name(gids[i]);
    }
    return out;
}

}  // namespace

std::string dicks_report(const DicksBundle& b, const RankProfile& profile) {
    std::ostringstream out;
    const CoreGraph& m = b.pb().meet;
    const Alphabet& ab = b.H().alphabet();

    for (int cover = 0; cover < 2; ++cover) {
        out << "== omega_" << (cover == 0 ? 'u' : 'v') << " ==\n";
        out << "vertices:";
        for (int gid = 0; gid < b.num_omega_vertices(); ++gid)
            if (b.vertex_cover(gid) == cover) out << ' ' << b.vertex_name(gid);
        out << '\n';
        for (int mv = 0; mv < m.num_vertices(); ++mv)
            if (b.edge_cover(mv) == cover)
                out << "edge " << b.vertex_name(b.edge_endpoint_H(mv)) << " - "
                    << b.vertex_name(b.edge_endpoint_K(mv)) << '\n';
    }
    for (int l = 0; l < 3; ++l) {
        out << "== omega_" << ab.letter(l) << " ==\n";
        out << "vertices:";
        for (int ge = 0; ge < b.num_gamma_edges(); ++ge)
            if (b.gedge_label(ge) == l) out << ' ' << b.gedge_name(ge);
        out << '\n';
        for (int me = 0; me < m.num_edges(); ++me) {
            if (m.edge(me).label != l) continue;
            auto [eh, ek] = b.pb().edge_pair[me];
            out << "edge " << b.gedge_name(eh) << " - " << b.gedge_name(b.H().num_edges() + ek)
                << '\n';
        }
    }

    out << "== duality ==\n";
    DualityReport dr = check_duality(b);
    for (const auto& p : dr.pairs)
        out << ab.letter(p.letter) << "-pair: {" << join_names(b, p.u_vertices) << "} <-> {"
            << join_names(b, p.v_vertices) << "}\n";

    out << "== omega_abc ==\n";
    std::vector<std::vector<int>> abc_members(b.num_abc_components());
    for (int gid = 0; gid < b.num_omega_vertices(); ++gid)
        if (b.abc_component(gid) >= 0) abc_members[b.abc_component(gid)].push_back(gid);
    for (std::size_t c = 0; c < abc_members.size(); ++c)
        out << "component " << c << ": " << join_names(b, abc_members[c]) << '\n';

    Theorem43Report tr = theorem43_report(b, profile);
    out << "vertices_H " << tr.abc_vertices_H << " expected " << tr.expected_H << '\n';
    out << "vertices_K " << tr.abc_vertices_K << " expected " << tr.expected_K << '\n';
    out << "edges " << tr.abc_edges << " expected " << tr.expected_edges << '\n';

    out << "== ccg ==\n";
    ColoredMultigraph ccg = build_ccg(b);
    out << "vertices " << ccg.n() << '\n';
    for (const auto& e : ccg.edges())
        out << "edge " << e.u << ' ' << e.v << ' ' << color_name(e.color) << '\n';
    out << "sigma " << sigma(ccg) << '\n';

    out << "== theorem ==\n";
    out << "components " << tr.abc_components << " vs 2rrT " << tr.two_rr_T
        << (tr.equality ? " (equality)" : " (strict)") << '\n';
    out << "ccg_monochromatic " << (tr.ccg_monochromatic ? "true" : "false") << '\n';
    out << "cycles_confined " << (tr.cycles_confined ? "true" : "false") << '\n';
    out << "verdict " << (tr.ok ? "ok" : ("VIOLATION " + tr.detail)) << '\n';

    out << "[kv]\n";
    out << "profile=" << to_string(profile) << '\n';
    out << "abc_vertices_H=" << tr.abc_vertices_H << '\n';
    out << "abc_vertices_K=" << tr.abc_vertices_K << '\n';
    out << "abc_edges=" << tr.abc_edges << '\n';
    out << "abc_components=" << tr.abc_components << '\n';
    out << "two_rr_T=" << tr.two_rr_T << '\n';
    out << "sigma=" << tr.sigma_ccg << '\n';
    out << "equality=" << (tr.equality ? 1 : 0) << '\n';
    out << "ccg_monochromatic=" << (tr.ccg_monochromatic ? 1 : 0) << '\n';
    out << "cycles_confined=" << (tr.cycles_confined ? 1 : 0) << '\n';
    out << "duality_pairs=" << dr.pairs.size() << '\n';
    out << "ok=" << (tr.ok ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace stallings
