#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stallings/lattice.hpp"
#include "stallings/multigraph.hpp"

namespace stallings {

// A vertex of Omega = Omega_u ⊔ Omega_v is a vertex of Γ_H ⊔ Γ_K; a vertex
// of Omega_a/b/c is an edge of Γ_H ⊔ Γ_K.  Elements are addressed by a
// global id: H cells first, then K cells.
//
// Tags record which of the letter subgraphs a cell belongs to:
// bit l set on a vertex  <=>  the vertex lies in Omega_{·,letter l};
// bit l set on an Ω-edge <=>  the underlying pullback vertex emits/absorbs
// an l-labeled pullback edge.  A cell with all three bits is in Omega_abc.
class DicksBundle {
  public:
    // Inputs must be theta-scheme graphs normalized per the valence lemma:
    // all valences of Γ_H, Γ_K and the meet in {2, 3}.
    DicksBundle(CoreGraph H, CoreGraph K, PullbackResult pb);

    const CoreGraph& H() const { return H_; }
    const CoreGraph& K() const { return K_; }
    const PullbackResult& pb() const { return pb_; }

    int num_omega_vertices() const { return nvh_ + nvk_; }
    int num_omega_edges() const { return pb_.meet.num_vertices(); }
    bool vertex_is_H(int gid) const { return gid < nvh_; }
    int local_vertex(int gid) const { return gid < nvh_ ? gid : gid - nvh_; }
    int gid_H(int v) const { return v; }
    int gid_K(int v) const { return nvh_ + v; }
    std::string vertex_name(int gid) const;

    // u = 0 / v = 1 side covered by a vertex, and the H/K-vertex tag bits.
    int vertex_cover(int gid) const { return vcover_[gid]; }
    unsigned vertex_tags(int gid) const { return vtags_[gid]; }

    // Ω-edges are pullback (meet) vertices; endpoints are Omega vertices.
    int edge_endpoint_H(int m) const { return gid_H(pb_.vertex_pair[m].first); }
    int edge_endpoint_K(int m) const { return gid_K(pb_.vertex_pair[m].second); }
    int edge_cover(int m) const { return mcover_[m]; }
    unsigned edge_tags(int m) const { return mtags_[m]; }

    // Γ-edges are the vertices of Omega_a/b/c; global edge ids, H first.
    int num_gamma_edges() const { return neh_ + nek_; }
    bool gedge_is_H(int ge) const { return ge < neh_; }
    const Edge& gedge(int ge) const;
    int gedge_label(int ge) const { return gedge(ge).label; }
    // õ and t̃: origin / terminus of a Γ-edge, as Omega vertex gids.
    int o_embed(int ge) const;
    int t_embed(int ge) const;
    std::string gedge_name(int ge) const;

    // Connected components, precomputed: of Omega (all Ω-edges), of each
    // Omega_letter (on Γ-edges), and of Omega_abc.
    int omega_component(int gid) const { return omega_comp_[gid]; }
    int num_omega_components() const { return num_omega_comps_; }
    int letter_component(int ge) const { return letter_comp_[ge]; }
    int num_letter_components(int letter) const { return letter_comp_count_[letter]; }
    // Letter components are numbered contiguously per letter with known offsets.
    int letter_component_offset(int letter) const { return letter_comp_offset_[letter]; }

    // Omega_abc component of a 3-tagged vertex, -1 elsewhere.
    int abc_component(int gid) const { return abc_comp_[gid]; }
    int num_abc_components() const { return num_abc_comps_; }

    int abc_vertices_H_side() const { return abc_vh_; }
    int abc_vertices_K_side() const { return abc_vk_; }
    int abc_edge_count() const { return abc_edges_; }

    int basepoint_cover() const { return vcover_[gid_H(H_.basepoint())]; }

  private:
    CoreGraph H_, K_;
    PullbackResult pb_;
    int nvh_ = 0, nvk_ = 0, neh_ = 0, nek_ = 0;
    std::vector<int> vcover_, mcover_;
    std::vector<unsigned> vtags_, mtags_;
    std::vector<int> omega_comp_;
    int num_omega_comps_ = 0;
    std::vector<int> letter_comp_;
    std::array<int, 3> letter_comp_count_{0, 0, 0};
    std::array<int, 3> letter_comp_offset_{0, 0, 0};
    std::vector<int> abc_comp_;
    int num_abc_comps_ = 0;
    int abc_vh_ = 0, abc_vk_ = 0, abc_edges_ = 0;
};

DicksBundle build_dicks(const CoreGraph& H, const CoreGraph& K, const PullbackResult& pb);

// One dual pair per component of Omega_a/b/c: the õ-image in Omega_u and the
// t̃-image in Omega_v, isomorphic via t̃ ∘ õ^-1.
struct DualPair {
    int letter = 0;
    std::vector<int> u_vertices;            // Omega vertex gids, sorted
    std::vector<int> v_vertices;
    std::vector<std::pair<int, int>> iso;   // u gid -> v gid
};

struct DualityReport {
    std::vector<DualPair> pairs;
    std::array<int, 3> component_counts{0, 0, 0};  // of A, B, C
};

// Verifies the duality: A, B, C each split into evenly many components,
// paired u-side/v-side by an explicit structure-preserving isomorphism.
// Throws invariant_violation when the pairing fails.
DualityReport check_duality(const DicksBundle& b);

// Proposition-style remodel of the pushout: vertices are components of
// Omega, edges are components of Omega_a/b/c.  Must agree with the quotient
// construction; compare_pushouts checks that cell by cell.
PushoutGraph pushout_from_dicks(const DicksBundle& b);
bool compare_pushouts(const PushoutGraph& lhs, const PushoutGraph& rhs);

// Component connectivity graph: vertices are Omega_abc components; an edge
// of color magenta/yellow/cyan records an Omega_abc-avoidant path through
// Omega_ab, Omega_ac, Omega_bc respectively.
ColoredMultigraph build_ccg(const DicksBundle& b);

struct Theorem43Report {
    int abc_vertices_H = 0, abc_vertices_K = 0;   // part sizes of Omega_abc
    int expected_H = 0, expected_K = 0;           // 2rr(H), 2rr(K)
    int abc_edges = 0, expected_edges = 0;        // 2rr(H∩K)
    int abc_components = 0, two_rr_T = 0;
    bool equality = false;
    // The operative equality criterion: every cycle of the component
    // connectivity graph is monochromatic (equivalently Sigma(CCG) = n).
    bool ccg_monochromatic = false;
    // Stronger diagnostic: every cycle of Omega itself inside one of
    // Omega_ab, Omega_ac, Omega_bc.  Implies equality; the converse can
    // fail when a mixed cycle closes within a single Omega_abc component.
    bool cycles_confined = false;
    long sigma_ccg = 0;
    bool ok = false;
    std::string detail;
};

Theorem43Report theorem43_report(const DicksBundle& b, const RankProfile& profile);

// Every cycle of Omega lies inside one of Omega_ab, Omega_ac, Omega_bc:
// equivalently no block mixes two different exactly-two-letter edge tags.
bool omega_cycles_confined(const DicksBundle& b);

// Embedded copies of the complete bipartite K_{s,t} inside A, B or C, with
// the õ/t̃ transport as directed a/b/c edges.  A copy is a pair of vertex
// subsets, one per side of Omega's bipartition, in either size orientation.
struct SigVertex {
    std::vector<int> part_H, part_K;  // sorted Omega vertex gids
    unsigned members = 0;             // bitmask over letters a/b/c
    int valence = 0;

    bool operator<(const SigVertex& o) const {
        if (part_H != o.part_H) return part_H < o.part_H;
        return part_K < o.part_K;
    }
};

struct SigEdge {
    int from = 0, to = 0;  // indices into SigGraph::vertices
    int label = 0;
};

struct SigGraph {
    std::vector<SigVertex> vertices;
    std::vector<SigEdge> edges;

    int odd_valence_count() const;
};

SigGraph build_sig(const DicksBundle& b, int s, int t);

// Deterministic plain-text report: the five Omega graphs, duality pairs,
// Omega_abc statistics, the CCG, Sigma, and the theorem verdicts, followed
// by a machine-readable key=value section.
std::string dicks_report(const DicksBundle& b, const RankProfile& profile);

}  // namespace stallings
