#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stallings/lattice.hpp"
#include "stallings/rng.hpp"

namespace stallings {

enum class SampleMode { rose, bipartite_theta };
const char* mode_name(SampleMode m);
SampleMode parse_mode(const std::string& name);

struct SampleConfig {
    std::uint64_t seed = 1;
    long pairs = 1000;
    int max_vertices = 6;
    int alphabet_size = 2;
    SampleMode mode = SampleMode::rose;
    // Fraction of bipartite-mode samples put through the full Dicks-layer
    // invariant battery, as numerator/denominator.
    std::uint32_t dicks_check_num = 1, dicks_check_den = 1;
    int jobs = 1;
};

// Uniformly random partial injection on [0, n): domain size k is drawn with
// probability proportional to C(n,k)^2 k!, then domain, image and matching
// are uniform.  result[i] = image of i, or -1 outside the domain.
std::vector<int> random_partial_injection(int n, Rng& rng);

// Rejection sampling: one partial injection per letter, accepted when the
// graph is connected, has at least one edge, and every non-basepoint vertex
// has valence >= 2 (vertex 0 is the basepoint).  Deterministic in (n,
// alphabet, rng state); throws budget_error when the attempt cap runs out.
CoreGraph random_core_graph(int n, const Alphabet& alphabet, Rng& rng, int max_attempts = 100000);

struct ViolationRecord {
    long pair_index = 0;
    RankProfile profile;
    std::vector<std::string> H_gens, K_gens;
    bool verified = false;
};

struct SearchReport {
    SampleConfig config;
    std::map<RankProfile, long> tuples;
    std::vector<ViolationRecord> violations;        // UNKNOWN-region candidates
    std::vector<std::string> invariant_failures;    // theorem violations = bugs
    long pairs_requested = 0;
    long pairs_evaluated = 0;
    long skipped = 0;           // sampling budget misses
    long unclassified = 0;      // pairs with min rank < 2, outside the conjecture
    long dicks_checked = 0;
    double elapsed_seconds = 0;  // measurement only; never in the report text

    // Deterministic text: tuple TSV, violation JSON lines, summary line.
    std::string to_text() const;
    void merge(const SearchReport& other);
};

// Monte-Carlo conjecture scan: per-pair substreams keyed on (seed, index)
// make the report a pure function of the config, for any worker count.
SearchReport search(const SampleConfig& cfg);

}  // namespace stallings
