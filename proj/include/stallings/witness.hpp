#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stallings/lattice.hpp"
#include "stallings/locus.hpp"

namespace stallings {

// A subgroup pair certifying that a rank tuple is realizable.  `verified`
// is set only after the full pipeline reproduced the stored profile.
struct WitnessRecord {
    RankProfile profile;
    std::vector<std::string> H_gens, K_gens;  // printed words
    std::string provenance;                   // base-search | Ia | Ib | II | fixture
    bool verified = false;
};

// Append-only TSV: h k v c H-words(;) K-words(;) provenance verified.
// One writer, many readers; lookups also try the (k, h) mirror and swap
// the generator lists back.
class WitnessStore {
  public:
    WitnessStore() = default;
    explicit WitnessStore(std::string path);

    std::optional<WitnessRecord> lookup(const RankProfile& p) const;
    void add(const WitnessRecord& rec);

    const std::string& path() const { return path_; }
    std::size_t size() const { return records_.size(); }

    static WitnessRecord parse_line(const std::string& line);
    static std::string format_line(const WitnessRecord& rec);

  private:
    std::string path_;  // empty = in-memory only
    std::map<std::tuple<int, int, int, int>, WitnessRecord> records_;
};

// Runs the pipeline on the record's words and marks it verified when the
// measured profile matches exactly.
WitnessRecord verify_witness(WitnessRecord rec);

enum class WitnessOp { Ia, Ib, II };

// Adds a fresh generator to H, to K, or the same one to both; re-verifies
// and checks the predicted rank map (Ia: v+1; Ib: v+1; II: v+1 and c+1).
WitnessRecord apply_operation(const WitnessRecord& w, WitnessOp op);

struct SearchBudget {
    std::uint64_t seed = 20240713;
    long attempts = 200000;
    int max_vertices = 6;
};

// Verified witness for a REALIZABLE profile: store lookup, then a schedule
// of fresh-generator operations from a smaller witness, with base rows
// (v = 2) coming from seeded random search.
WitnessRecord construct_witness(const RankProfile& p, WitnessStore& store,
                                const SearchBudget& budget = {});

}  // namespace stallings
