#pragma once

#include <string>
#include <vector>

#include "stallings/core_graph.hpp"
#include "stallings/rng.hpp"
#include "stallings/words.hpp"

namespace testutil {

using namespace stallings;

inline Word w(const std::string& text, const Alphabet& alphabet) {
    return parse_word(text, alphabet);
}

inline std::vector<Word> words(std::initializer_list<std::string> texts, const Alphabet& alphabet) {
    std::vector<Word> out;
    for (const auto& t : texts) out.push_back(parse_word(t, alphabet));
    return out;
}

// Example 2.2 fixture pair: H = theta<a, bab^-1>, K = theta<b^-1 a, ba>.
inline std::vector<Word> example22_H(const Alphabet& abc) {
    return words({"cA", "cBcAbC"}, abc);
}
inline std::vector<Word> example22_K(const Alphabet& abc) {
    return words({"bA", "cBcA"}, abc);
}

// Example 6.2 fixture pair: H = theta<b, a^3, ab^-1 a, ab^2 a^-1>,
// K = theta<a^-1 b, b^-2 a b^2>.
inline std::vector<Word> example62_H(const Alphabet& abc) {
    return words({"cB", "cAcAcA", "cAbA", "cAcBcBaC"}, abc);
}
inline std::vector<Word> example62_K(const Alphabet& abc) {
    return words({"aB", "bCbAcBcB"}, abc);
}

// Random freely reduced word of length <= max_len.
inline Word random_word(const Alphabet& alphabet, int max_len, Rng& rng) {
    std::vector<Syllable> syl;
    int len = static_cast<int>(rng.below(max_len + 1));
    int last_letter = -1, last_sign = 0;
    for (int i = 0; i < len; ++i) {
        while (true) {
            int l = static_cast<int>(rng.below(alphabet.size()));
            int s = rng.below(2) ? 1 : -1;
            if (l == last_letter && s == -last_sign) continue;  // keep it reduced
            syl.push_back({alphabet.letter(l), s});
            last_letter = l;
            last_sign = s;
            break;
        }
    }
    return Word(std::move(syl));
}

inline std::vector<Word> random_generators(const Alphabet& alphabet, int max_count, int max_len,
                                           Rng& rng) {
    int count = 1 + static_cast<int>(rng.below(max_count));
    std::vector<Word> out;
    for (int i = 0; i < count; ++i) out.push_back(random_word(alphabet, max_len, rng));
    return out;
}

}  // namespace testutil
