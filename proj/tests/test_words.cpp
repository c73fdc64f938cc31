#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "stallings/errors.hpp"

using namespace stallings;
using testutil::w;

TEST_CASE("parse_word reduces and round-trips") {
    Alphabet abc = Alphabet::theta_target();
    CHECK(print_word(w("cA", abc)) == "cA");
    CHECK(w("cA", abc).syllables() == std::vector<Syllable>{{"c", 1}, {"a", -1}});
    CHECK(w("aA", abc).empty());
    CHECK(print_word(w("cBbA", abc)) == "cA");

    // Parsing then printing then parsing is idempotent.
    for (const char* t : {"cBcAbC", "abcABC", "", "aaB"}) {
        Word once = w(t, abc);
        CHECK(w(print_word(once), abc) == once);
    }
}

TEST_CASE("parse_word rejects symbols outside the alphabet") {
    Alphabet ab({"a", "b"});
    CHECK_THROWS_AS(parse_word("axb", ab), parse_error);
    CHECK_THROWS_AS(parse_word("a b", ab), parse_error);
    try {
        parse_word("abq", ab);
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("q") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);  // offending position
    }
}

TEST_CASE("indexed letters tokenize as units") {
    Alphabet idx({"x1", "x2"});
    Word u = w("x1X2", idx);
    CHECK(u.length() == 2);
    CHECK(print_word(u) == "x1X2");
}

TEST_CASE("reduce handles nesting and inverses") {
    Alphabet abc = Alphabet::theta_target();
    CHECK(w("abBA", abc).empty());
    CHECK(print_word(w("cBcAbC", abc)) == "cBcAbC");  // already reduced
    CHECK(concat(w("cA", abc), w("aC", abc)).empty());
}

TEST_CASE("reduce is idempotent and kills w w^-1 on random words") {
    Alphabet abc = Alphabet::theta_target();
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        // Raw, possibly unreduced syllables.
        std::vector<Syllable> raw;
        int len = static_cast<int>(rng.below(12));
        for (int i = 0; i < len; ++i)
            raw.push_back({abc.letter(static_cast<int>(rng.below(3))), rng.below(2) ? 1 : -1});
        Word reduced = reduce(raw);
        CHECK(reduce(reduced.syllables()) == reduced);
        CHECK(static_cast<int>(raw.size() - reduced.syllables().size()) % 2 == 0);
        CHECK(concat(reduced, invert(reduced)).empty());
    }
}

TEST_CASE("theta_embed on the defining examples") {
    Alphabet xy = Alphabet::xy();
    CHECK(print_word(theta_embed(w("x", xy), xy)) == "cA");
    CHECK(print_word(theta_embed(w("y", xy), xy)) == "cB");
    CHECK(print_word(theta_embed(w("Yx", xy), xy)) == "bA");
    CHECK(print_word(theta_embed(w("Xy", xy), xy)) == "aB");
    CHECK(theta_embed(Word(), xy).empty());
    CHECK_THROWS_AS(theta_embed(Word(), Alphabet::theta_target()), domain_error);
}

TEST_CASE("rank2_embed on the positional examples") {
    Alphabet idx({"x1", "x2"});
    CHECK(print_word(rank2_embed(w("x1", idx), idx)) == "Yxy");
    CHECK(print_word(rank2_embed(w("x2", idx), idx)) == "YYxyy");
    CHECK(rank2_embed(Word(), idx).empty());
}

TEST_CASE("embeddings are homomorphisms") {
    Alphabet xy = Alphabet::xy();
    Alphabet idx({"x1", "x2", "x3"});
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        Word u = testutil::random_word(xy, 6, rng);
        Word v = testutil::random_word(xy, 6, rng);
        CHECK(theta_embed(concat(u, v), xy) == concat(theta_embed(u, xy), theta_embed(v, xy)));
        Word a = testutil::random_word(idx, 6, rng);
        Word b = testutil::random_word(idx, 6, rng);
        CHECK(rank2_embed(concat(a, b), idx) == concat(rank2_embed(a, idx), rank2_embed(b, idx)));
    }
}

TEST_CASE("theta_embed is injective on all reduced words of length <= 6") {
    Alphabet xy = Alphabet::xy();
    std::vector<Word> frontier{Word()};
    std::set<std::string> images{print_word(theta_embed(Word(), xy))};
    long total = 1;
    for (int len = 1; len <= 6; ++len) {
        std::vector<Word> next;
        for (const Word& u : frontier) {
            for (int l = 0; l < 2; ++l) {
                for (int s : {1, -1}) {
                    if (!u.empty() && u.syllables().back().letter == xy.letter(l) &&
                        u.syllables().back().sign == -s)
                        continue;
                    std::vector<Syllable> syl = u.syllables();
                    syl.push_back({xy.letter(l), s});
                    next.push_back(Word(std::move(syl)));
                }
            }
        }
        for (const Word& u : next) {
            ++total;
            CHECK(images.insert(print_word(theta_embed(u, xy))).second);
        }
        frontier = std::move(next);
    }
    CHECK(total == static_cast<long>(images.size()));
}

TEST_CASE("alphabet validation and the fresh-letter supply") {
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), domain_error);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), domain_error);
    CHECK_THROWS_AS(Alphabet({"A"}), domain_error);
    Alphabet xy = Alphabet::xy();
    CHECK(xy.fresh_letter() == "x1");
    Alphabet ext = xy.extended();
    CHECK(ext.size() == 3);
    CHECK(ext.fresh_letter() == "x2");
}

TEST_CASE("subgroup file parsing: comments, blanks, header, inference") {
    SubgroupFile f = read_subgroup_text("# a comment\n\nalphabet: a b c\ncA\ncBcAbC\n");
    CHECK(f.alphabet.size() == 3);
    CHECK(f.generators.size() == 2);
    CHECK(print_word(f.generators[1]) == "cBcAbC");

    SubgroupFile inferred = read_subgroup_text("xy\nYx\n");
    CHECK(inferred.alphabet.letters() == std::vector<std::string>{"x", "y"});

    std::string text = write_subgroup_text(f);
    SubgroupFile again = read_subgroup_text(text);
    CHECK(again.alphabet == f.alphabet);
    CHECK(again.generators == f.generators);
}
