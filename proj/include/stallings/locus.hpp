#pragma once

#include <string>
#include <vector>

#include "stallings/lattice.hpp"

namespace stallings {

// Boundary of the known-realizable region on page (h, k): for i = h+k-v the
// values 0..a_i are realizable.  Quadratic up to i = 2(h-1), linear after;
// the two branches agree at the seam and the last entry is (h-1)(k-1)+1.
// Arguments are sorted internally; h < 2 is a domain error.
std::vector<long> a_sequence(int h, int k);

enum class Verdict { REALIZABLE, NONREALIZABLE, UNKNOWN };
const char* verdict_name(Verdict v);

struct RuleHit {
    std::string id;        // R1..R6
    std::string citation;  // what the rule encodes
};

struct Classification {
    Verdict verdict = Verdict::UNKNOWN;
    std::vector<RuleHit> rules;
    bool ivanov_open_question = false;
};

// Applies, in order:
//   R1 intersection-rank bound        c <= (h-1)(k-1)+1
//   R2 Hopfian rule                   v = h+k forces c = 0
//   R3 quadratic offset bound         rr(c) <= i(i-1)/2
//   R4 extremal exclusion             i >= 3, c = i(i-1)/2 + 1 is impossible
//   R5 h = 2 is decided completely    realizable iff c + v <= k + 2
//   R6 constructive region            c <= a_i is realizable
// Anything that survives is UNKNOWN: conjecturally empty but not refuted,
// so it is never reported as NONREALIZABLE.
Classification classify(const RankProfile& p);

// Profile sanity for classification: h, k >= 2 (swapping so h <= k),
// 2 <= v <= h+k, c >= 0.  Throws domain_error otherwise.
RankProfile normalized_profile(const RankProfile& p);

struct LocusCell {
    int v = 0, c = 0;
    Classification cls;
    bool witnessed = false;
};

struct LocusTable {
    int h = 0, k = 0;
    // Rows indexed by v descending from h+k to 2; columns c = 0..(h-1)(k-1)+1.
    std::vector<std::vector<LocusCell>> rows;

    std::string to_csv() const;
    std::string to_ascii() const;
};

class WitnessStore;
LocusTable locus_table(int h, int k, const WitnessStore* store);

}  // namespace stallings
