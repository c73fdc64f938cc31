#include "stallings/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "stallings/errors.hpp"

namespace stallings {

namespace {

bool valid_letter_token(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw domain_error("alphabet must be nonempty");
    std::set<std::string> seen;
    for (const auto& l : letters_) {
        if (!valid_letter_token(l))
            throw domain_error("bad alphabet letter '" + l + "' (want a-z or a-z followed by digits)");
        if (!seen.insert(l).second) throw domain_error("duplicate alphabet letter '" + l + "'");
    }
}

Alphabet Alphabet::theta_target() { return Alphabet({"a", "b", "c"}); }
Alphabet Alphabet::xy() { return Alphabet({"x", "y"}); }

int Alphabet::index_of(const std::string& symbol) const {
    for (int i = 0; i < size(); ++i)
        if (letters_[i] == symbol) return i;
    return -1;
}

std::string Alphabet::fresh_letter() const {
    for (int j = 1;; ++j) {
        std::string candidate = "x" + std::to_string(j);
        if (!contains(candidate)) return candidate;
    }
}

Alphabet Alphabet::extended() const {
    std::vector<std::string> ls = letters_;
    ls.push_back(fresh_letter());
    return Alphabet(std::move(ls));
}

Word::Word(std::vector<Syllable> syllables) {
    for (const auto& s : syllables) {
        if (!syl_.empty() && syl_.back().letter == s.letter && syl_.back().sign == -s.sign)
            syl_.pop_back();
        else
            syl_.push_back(s);
    }
}

bool Word::operator<(const Word& o) const {
    return print_word(*this) < print_word(o);
}

Word reduce(std::vector<Syllable> raw) { return Word(std::move(raw)); }

Word concat(const Word& a, const Word& b) {
    std::vector<Syllable> all = a.syllables();
    all.insert(all.end(), b.syllables().begin(), b.syllables().end());
    return Word(std::move(all));
}

Word invert(const Word& w) {
    std::vector<Syllable> out;
    out.reserve(w.syllables().size());
    for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it)
        out.push_back({it->letter, -it->sign});
    return Word(std::move(out));
}

Word parse_word(const std::string& text, const Alphabet& alphabet) {
    std::vector<Syllable> syl;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        int sign;
        if (std::islower(static_cast<unsigned char>(c)))
            sign = 1;
        else if (std::isupper(static_cast<unsigned char>(c)))
            sign = -1;
        else
            throw parse_error("unexpected character '" + std::string(1, c) + "' at position " +
                              std::to_string(i));
        std::string letter(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        std::size_t start = i++;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            letter.push_back(text[i++]);
        if (!alphabet.contains(letter))
            throw parse_error("symbol '" + text.substr(start, i - start) + "' at position " +
                              std::to_string(start) + " is not in the alphabet");
        syl.push_back({letter, sign});
    }
    return Word(std::move(syl));
}

std::string print_word(const Word& w) {
    std::string out;
    for (const auto& s : w.syllables()) {
        std::string tok = s.letter;
        if (s.sign < 0) tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        out += tok;
    }
    return out;
}

Word theta_embed(const Word& w, const Alphabet& domain) {
    if (domain.size() != 2)
        throw domain_error("theta_embed needs a 2-letter domain alphabet, got " +
                           std::to_string(domain.size()));
    std::vector<Syllable> out;
    for (const auto& s : w.syllables()) {
        int i = domain.index_of(s.letter);
        std::string target = (i == 0) ? "a" : "b";
        if (s.sign > 0) {
            out.push_back({"c", 1});
            out.push_back({target, -1});
        } else {
            out.push_back({target, 1});
            out.push_back({"c", -1});
        }
    }
    return Word(std::move(out));
}

Word rank2_embed(const Word& w, const Alphabet& domain) {
    std::vector<Syllable> out;
    for (const auto& s : w.syllables()) {
        int i = domain.index_of(s.letter) + 1;  // 1-based position
        for (int j = 0; j < i; ++j) out.push_back({"y", -1});
        out.push_back({"x", s.sign});
        for (int j = 0; j < i; ++j) out.push_back({"y", 1});
    }
    return Word(std::move(out));
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

SubgroupFile read_subgroup_text(const std::string& text) {
    std::vector<std::string> word_lines;
    std::vector<std::string> declared;
    bool have_header = false;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("alphabet:", 0) == 0) {
            std::istringstream ls(t.substr(9));
            std::string tok;
            while (ls >> tok) declared.push_back(tok);
            have_header = true;
            continue;
        }
        word_lines.push_back(t);
    }

    Alphabet alphabet;
    if (have_header) {
        alphabet = Alphabet(declared);
    } else {
        // Infer: collect letter tokens across all words, sorted.
        std::set<std::string> used;
        for (const auto& wl : word_lines) {
            std::size_t i = 0;
            while (i < wl.size()) {
                char c = wl[i];
                if (!std::isalpha(static_cast<unsigned char>(c)))
                    throw parse_error("unexpected character '" + std::string(1, c) + "' in word '" + wl + "'");
                std::string letter(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
                ++i;
                while (i < wl.size() && std::isdigit(static_cast<unsigned char>(wl[i])))
                    letter.push_back(wl[i++]);
                used.insert(letter);
            }
        }
        if (used.empty()) used.insert("a");
        alphabet = Alphabet(std::vector<std::string>(used.begin(), used.end()));
    }

    SubgroupFile f;
    f.alphabet = alphabet;
    for (const auto& wl : word_lines) f.generators.push_back(parse_word(wl, alphabet));
    return f;
}

std::string write_subgroup_text(const SubgroupFile& f) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& l : f.alphabet.letters()) out << ' ' << l;
    out << '\n';
    for (const auto& w : f.generators) out << print_word(w) << '\n';
    return out.str();
}

}  // namespace stallings
