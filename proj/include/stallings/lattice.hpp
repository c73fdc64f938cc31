#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stallings/core_graph.hpp"

namespace stallings {

// Core graph of H ∩ K together with the two immersions onto the factors.
// vertex_pair[m] = (vertex of Γ_H, vertex of Γ_K) covered by meet vertex m;
// edge_pair[m] likewise for edges.
struct PullbackResult {
    CoreGraph meet;
    std::vector<std::pair<int, int>> vertex_pair;
    std::vector<std::pair<int, int>> edge_pair;
};

// Basepoint component of the fiber product, trimmed to the core.  Only the
// component of (x_H, x_K) is ever explored; the full product is never built.
PullbackResult pullback(const CoreGraph& H, const CoreGraph& K);

// Core graph of H ∨ K: wedge at the basepoints, fold, trim.
CoreGraph join(const CoreGraph& H, const CoreGraph& K);

// Quotient of Γ_H ⊔ Γ_K by the equivalence generated by the pullback
// projections.  Usually not folded; folding it further yields Γ_{H∨K},
// so rank(T) ≥ rank(Γ_{H∨K}).
struct PushoutGraph {
    LabeledGraph graph;
    int basepoint = 0;
    // Input element -> quotient class id.
    std::vector<int> vclass_H, vclass_K;
    std::vector<int> eclass_H, eclass_K;

    int rank() const;
};

PushoutGraph pushout(const CoreGraph& H, const CoreGraph& K, const PullbackResult& pb);

std::string serialize(const PushoutGraph& t);

// The four ranks of a subgroup pair plus the derived offset i = h + k - v.
// h and k are reported as measured (H first), not sorted.
struct RankProfile {
    int h = 0, k = 0, v = 0, c = 0;

    int i() const { return h + k - v; }
    bool operator==(const RankProfile& o) const {
        return h == o.h && k == o.k && v == o.v && c == o.c;
    }
    bool operator<(const RankProfile& o) const {
        if (h != o.h) return h < o.h;
        if (k != o.k) return k < o.k;
        if (v != o.v) return v < o.v;
        return c < o.c;
    }
};

std::string to_string(const RankProfile& p);

// End-to-end pipeline.  Checks the Hanna Neumann bound and the Hopfian rule
// on the result; a failure of either would falsify a theorem and therefore
// throws invariant_violation.
RankProfile rank_profile(const CoreGraph& H, const CoreGraph& K);
RankProfile rank_profile(const std::vector<Word>& H_gens, const std::vector<Word>& K_gens,
                         const Alphabet& alphabet);

// Conjugate H and K simultaneously so that none of Γ_H, Γ_K, Γ_{H∩K} keeps
// a valence-1 vertex.  Returns the conjugator g with H' = g H g^-1; g is
// the inverse of the label of the shortest path from the pullback basepoint
// to a valence-3 vertex.  Requires H ∩ K ≠ 1.  Ranks are unchanged.
struct NormalizedPair {
    CoreGraph H, K;
    Word conjugator;
};

NormalizedPair normalize_pair(const CoreGraph& H, const CoreGraph& K);

}  // namespace stallings
