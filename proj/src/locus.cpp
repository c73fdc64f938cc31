#include "stallings/locus.hpp"

#include <algorithm>
#include <sstream>

#include "stallings/errors.hpp"
#include "stallings/witness.hpp"

namespace stallings {

std::vector<long> a_sequence(int h, int k) {
    if (h > k) std::swap(h, k);
    if (h < 2) throw domain_error("a_sequence needs 2 <= h <= k, got h = " + std::to_string(h));
    std::vector<long> a(h + k - 1);
    a[0] = 0;
    for (int i = 1; i <= h + k - 2; ++i) {
        if (i <= 2 * (h - 1))
            a[i] = static_cast<long>(i) * i / 4 + 1;
        else
            a[i] = static_cast<long>(h - 1) * (i - h + 1) + 1;
    }
    return a;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::REALIZABLE: return "REALIZABLE";
        case Verdict::NONREALIZABLE: return "NONREALIZABLE";
        case Verdict::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

RankProfile normalized_profile(const RankProfile& p) {
    RankProfile q = p;
    if (q.h > q.k) std::swap(q.h, q.k);
    if (q.h < 2)
        throw domain_error("classification covers ranks h, k >= 2; got " + to_string(p));
    if (q.v < 2 || q.v > q.h + q.k)
        throw domain_error("join rank must satisfy 2 <= v <= h + k; got " + to_string(p));
    if (q.c < 0) throw domain_error("intersection rank must be nonnegative; got " + to_string(p));
    return q;
}

Classification classify(const RankProfile& raw) {
    RankProfile p = normalized_profile(raw);
    const long h = p.h, k = p.k, v = p.v, c = p.c;
    const long i = h + k - v;
    const long rr_c = c > 1 ? c - 1 : 0;

    Classification out;
    auto refute = [&](const std::string& id, const std::string& citation) {
        out.verdict = Verdict::NONREALIZABLE;
        out.rules.push_back({id, citation});
        return out;
    };

    if (c > (h - 1) * (k - 1) + 1)
        return refute("R1", "rr(c) <= rr(h) rr(k), the intersection-rank bound");
    if (v == h + k && c != 0)
        return refute("R2", "v = h + k makes the join a free product, so c = 0");
    if (rr_c > i * (i - 1) / 2)
        return refute("R3", "rr(c) <= i(i-1)/2 for i = h + k - v");
    if (i >= 3 && c == i * (i - 1) / 2 + 1)
        return refute("R4", "c = i(i-1)/2 + 1 with i >= 3 is not realizable");
    if (h == 2) {
        if (c + v <= k + 2) {
            out.verdict = Verdict::REALIZABLE;
            out.rules.push_back({"R5", "h = 2 pages are decided: realizable iff c + v <= k + 2"});
        } else {
            refute("R5", "h = 2 pages are decided: realizable iff c + v <= k + 2");
        }
        return out;
    }
    std::vector<long> a = a_sequence(static_cast<int>(h), static_cast<int>(k));
    if (c <= a[i]) {
        out.verdict = Verdict::REALIZABLE;
        out.rules.push_back({"R6", "c <= a_i lies in the constructive region"});
        return out;
    }
    out.verdict = Verdict::UNKNOWN;
    out.rules.push_back({"C", "conjecturally empty: a_i < c within all known bounds"});
    if (c == (h - 1) * (k - 1) + 1 && v > 2) out.ivanov_open_question = true;
    return out;
}

LocusTable locus_table(int h, int k, const WitnessStore* store) {
    if (h > k) std::swap(h, k);
    if (h < 2) throw domain_error("locus pages need 2 <= h <= k");
    LocusTable t;
    t.h = h;
    t.k = k;
    const int cmax = (h - 1) * (k - 1) + 1;
    for (int v = h + k; v >= 2; --v) {
        std::vector<LocusCell> row;
        for (int c = 0; c <= cmax; ++c) {
            LocusCell cell;
            cell.v = v;
            cell.c = c;
            cell.cls = classify({h, k, v, c});
            if (store && cell.cls.verdict == Verdict::REALIZABLE) {
                auto rec = store->lookup({h, k, v, c});
                cell.witnessed = rec.has_value() && rec->verified;
            }
            row.push_back(std::move(cell));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

std::string cell_token(const LocusCell& cell) {
    switch (cell.cls.verdict) {
        case Verdict::REALIZABLE: return cell.witnessed ? "R+" : "R";
        case Verdict::NONREALIZABLE: return "N:" + cell.cls.rules.front().id;
        case Verdict::UNKNOWN: return cell.cls.ivanov_open_question ? "U:IQ" : "U";
    }
    return "?";
}

}  // namespace

std::string LocusTable::to_csv() const {
    std::ostringstream out;
    out << "v\\c";
    if (!rows.empty())
        for (const auto& cell : rows.front()) out << ',' << cell.c;
    out << '\n';
    for (const auto& row : rows) {
        out << row.front().v;
        for (const auto& cell : row) out << ',' << cell_token(cell);
        out << '\n';
    }
    return out.str();
}

std::string LocusTable::to_ascii() const {
    std::ostringstream out;
    out << "page (" << h << "," << k << ")   R realizable (+ witnessed), N:rule non-realizable, "
        << "U open\n";
    std::size_t width = 4;
    for (const auto& row : rows)
        for (const auto& cell : row) width = std::max(width, cell_token(cell).size());
    auto pad = [&](const std::string& s) {
        out << s;
        for (std::size_t i = s.size(); i < width + 1; ++i) out << ' ';
    };
    pad("v\\c");
    if (!rows.empty())
        for (const auto& cell : rows.front()) pad(std::to_string(cell.c));
    out << '\n';
    for (const auto& row : rows) {
        pad(std::to_string(row.front().v));
        for (const auto& cell : row) pad(cell_token(cell));
        out << '\n';
    }
    return out.str();
}

}  // namespace stallings
