#pragma once

#include <string>
#include <vector>

namespace stallings {

// Generating set of the ambient free group.  Letters are either a single
// lowercase character ("a") or an indexed token ("x1", "x12").  Order is
// significant: it fixes canonical edge ordering and the positional maps
// used by theta_embed and rank2_embed.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    static Alphabet theta_target();  // {a, b, c}
    static Alphabet xy();            // {x, y}

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& letter(int i) const { return letters_[i]; }
    const std::vector<std::string>& letters() const { return letters_; }

    // -1 when the symbol is not a letter of this alphabet.
    int index_of(const std::string& symbol) const;
    bool contains(const std::string& symbol) const { return index_of(symbol) >= 0; }

    // Smallest indexed letter x1, x2, ... not already present.  This is the
    // fresh-generator supply for the witness operations; the alphabet stays
    // countable the way the constructions need it to.
    std::string fresh_letter() const;
    Alphabet extended() const;

    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }

  private:
    std::vector<std::string> letters_;
};

struct Syllable {
    std::string letter;
    int sign = 1;  // +1 or -1

    bool operator==(const Syllable& o) const { return letter == o.letter && sign == o.sign; }
};

// Freely reduced word.  The constructor reduces, so every Word in the
// program is in normal form; the empty word is the identity.
class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Syllable> syllables);

    const std::vector<Syllable>& syllables() const { return syl_; }
    int length() const { return static_cast<int>(syl_.size()); }
    bool empty() const { return syl_.empty(); }

    bool operator==(const Word& o) const { return syl_ == o.syl_; }
    bool operator<(const Word& o) const;

  private:
    std::vector<Syllable> syl_;
};

// Lowercase = generator, uppercase = inverse, digits extend the preceding
// letter into an indexed token.  Whitespace is not allowed.
Word parse_word(const std::string& text, const Alphabet& alphabet);
std::string print_word(const Word& w);

Word reduce(std::vector<Syllable> raw);
Word concat(const Word& a, const Word& b);
Word invert(const Word& w);

// x |-> c a^-1, y |-> c b^-1 (positional on a 2-letter alphabet).
Word theta_embed(const Word& w, const Alphabet& domain);

// i-th letter |-> y^-(i) x y^(i), 1-based position.  Injective, so it
// preserves ranks of subgroups, joins and intersections.
Word rank2_embed(const Word& w, const Alphabet& domain);

// Subgroup file: one word per line, '#' starts a comment, blank lines
// ignored, optional "alphabet: a b c" header.  Without a header the
// alphabet is the sorted set of letters that occur.
struct SubgroupFile {
    Alphabet alphabet;
    std::vector<Word> generators;
};
SubgroupFile read_subgroup_text(const std::string& text);
std::string write_subgroup_text(const SubgroupFile& f);

}  // namespace stallings
