#include <doctest.h>

#include <sstream>

#include "parksent/errors.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/rng.hpp"

using namespace parksent;

namespace {

Lexicon from_pairs(std::initializer_list<std::pair<const char*, double>> pairs) {
    Lexicon lex;
    for (const auto& [word, score] : pairs) lex.insert(word, score);
    return lex;
}

Lexicon random_lexicon(rng::Engine& eng, int n) {
    Lexicon lex;
    for (int i = 0; i < n; ++i)
        lex.insert("w" + std::to_string(i), 1.0 + 8.0 * rng::uniform01(eng));
    return lex;
}

}  // namespace

TEST_SUITE("lexicon") {

TEST_CASE("load keeps scored rows") {
    std::istringstream in("sunshine,7.9\ntraffic,3.3\n");
    const Lexicon lex = load_lexicon(in);
    CHECK(lex.size() == 2);
    CHECK(lex.find("sunshine").value() == doctest::Approx(7.9));
    CHECK(lex.find("traffic").value() == doctest::Approx(3.3));
}

TEST_CASE("load accepts an optional header and tabs") {
    std::istringstream csv("word,score\nsunshine,7.9\n");
    CHECK(load_lexicon(csv).size() == 1);
    std::istringstream tsv("word\tscore\nsunshine\t7.9\ntraffic\t3.3\n");
    const Lexicon lex = load_lexicon(tsv);
    CHECK(lex.size() == 2);
    CHECK(lex.find("traffic").value() == doctest::Approx(3.3));
}

TEST_CASE("load lowercases words") {
    std::istringstream in("SunShine,7.9\n");
    CHECK(load_lexicon(in).contains("sunshine"));
}

TEST_CASE("duplicate words are rejected with both line numbers") {
    std::istringstream in("a,5.0\na,5.1\n");
    try {
        load_lexicon(in);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("'a'") != std::string::npos);
        CHECK(what.find("1") != std::string::npos);
        CHECK(what.find("2") != std::string::npos);
    }
}

TEST_CASE("out-of-range scores and empty files are rejected") {
    std::istringstream high("word,score\nx,9.5\n");
    CHECK_THROWS_AS(load_lexicon(high), ValidationError);
    std::istringstream low("x,0.5\n");
    CHECK_THROWS_AS(load_lexicon(low), ValidationError);
    std::istringstream empty("");
    CHECK_THROWS_AS(load_lexicon(empty), ValidationError);
    std::istringstream header_only("word,score\n");
    CHECK_THROWS_AS(load_lexicon(header_only), ValidationError);
}

TEST_CASE("default lens drops the neutral band") {
    const Lexicon lex = from_pairs({{"at", 4.9}, {"and", 5.2}, {"church", 5.5}});
    const Lexicon filtered = apply_lens(lex, Lens{});
    CHECK(filtered.empty());
}

TEST_CASE("lens keeps out-of-band words") {
    const Lexicon lex = from_pairs({{"sunshine", 7.9}, {"traffic", 3.3}});
    const Lexicon filtered = apply_lens(lex, Lens{});
    CHECK(filtered.size() == 2);
}

TEST_CASE("lens on an empty lexicon is the empty lexicon") {
    CHECK(apply_lens(Lexicon{}, Lens{}).empty());
}

TEST_CASE("open vs closed boundary modes") {
    const Lexicon lex = from_pairs({{"edge4", 4.0}, {"edge6", 6.0}, {"mid", 5.0}});
    const Lexicon open = apply_lens(lex, Lens{4.0, 6.0, Lens::Mode::Open});
    CHECK(open.contains("edge4"));
    CHECK(open.contains("edge6"));
    CHECK_FALSE(open.contains("mid"));
    const Lexicon closed = apply_lens(lex, Lens{4.0, 6.0, Lens::Mode::Closed});
    CHECK(closed.empty());
}

TEST_CASE("apply_lens is idempotent; filters commute and shrink") {
    rng::Engine eng(11);
    for (int iter = 0; iter < 30; ++iter) {
        const Lexicon lex = random_lexicon(eng, 40);
        const Lens lens{3.0 + 2.0 * rng::uniform01(eng), 5.5 + 2.0 * rng::uniform01(eng),
                        iter % 2 ? Lens::Mode::Open : Lens::Mode::Closed};
        const Lexicon once = apply_lens(lex, lens);
        CHECK(apply_lens(once, lens).entries() == once.entries());
        CHECK(once.size() <= lex.size());

        std::set<std::string> stop = {"w1", "w7", "w20", "nothere"};
        const Lexicon a = remove_words(apply_lens(lex, lens), stop);
        const Lexicon b = apply_lens(remove_words(lex, stop), lens);
        CHECK(a.entries() == b.entries());
        CHECK(a.size() <= lex.size());
    }
}

TEST_CASE("park name stoplist tokenizes names") {
    const std::vector<std::string> golden = {"Golden Gate Park"};
    CHECK(park_name_stoplist(golden) == std::set<std::string>{"golden", "gate", "park"});
    CHECK(park_name_stoplist(std::vector<std::string>{}).empty());
    const std::vector<std::string> squares = {"Alamo Square", "Union Square"};
    CHECK(park_name_stoplist(squares) == std::set<std::string>{"alamo", "square", "union"});
}

TEST_CASE("remove_words is set difference") {
    const Lexicon lex = from_pairs({{"park", 7.1}, {"sunshine", 7.9}});
    const Lexicon no_park = remove_words(lex, {"park"});
    CHECK(no_park.size() == 1);
    CHECK(no_park.find("sunshine").value() == doctest::Approx(7.9));
    CHECK(remove_words(lex, {}).entries() == lex.entries());
    CHECK(remove_words(lex, {"park", "sunshine", "extra"}).empty());
}

}  // TEST_SUITE
