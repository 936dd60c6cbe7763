#include <doctest.h>

#include <set>
#include <sstream>

#include "parksent/csv.hpp"
#include "parksent/errors.hpp"
#include "parksent/hedonics.hpp"
#include "parksent/rng.hpp"
#include "parksent/timeutil.hpp"

using namespace parksent;

TEST_SUITE("util") {

TEST_CASE("rfc3339 parsing handles offsets and UTC") {
    const Instant base = parse_rfc3339("2016-06-15T19:00:00Z");
    CHECK(parse_rfc3339("2016-06-15T12:00:00-07:00") == base);
    CHECK(parse_rfc3339("2016-06-15T12:00:00-0700") == base);
    CHECK(parse_rfc3339("2016-06-16T00:30:00+05:30") == base);
    CHECK(parse_rfc3339("2016-06-15T19:00:00.123Z") == base);
    CHECK(format_rfc3339_utc(base) == "2016-06-15T19:00:00Z");
}

TEST_CASE("rfc3339 rejects malformed input") {
    CHECK_THROWS_AS(parse_rfc3339("2016-06-15"), ValidationError);
    CHECK_THROWS_AS(parse_rfc3339("2016-06-15T12:00:00"), ValidationError);
    CHECK_THROWS_AS(parse_rfc3339("not a time"), ValidationError);
    CHECK_THROWS_AS(parse_rfc3339("2016-13-15T12:00:00Z"), ValidationError);
    CHECK_THROWS_AS(parse_rfc3339("2016-06-15T25:00:00Z"), ValidationError);
}

TEST_CASE("timestamp round trip across epochs") {
    for (const char* text : {"1969-12-31T23:59:59Z", "1970-01-01T00:00:00Z",
                             "2016-05-19T00:00:00Z", "2100-02-28T23:00:01Z"}) {
        CHECK(format_rfc3339_utc(parse_rfc3339(text)) == text);
    }
}

TEST_CASE("timezone offsets parse") {
    CHECK(TzOffset::parse("UTC").seconds == 0);
    CHECK(TzOffset::parse("Z").seconds == 0);
    CHECK(TzOffset::parse("UTC-7").seconds == -7 * 3600);
    CHECK(TzOffset::parse("UTC+05:30").seconds == 5 * 3600 + 30 * 60);
    CHECK(TzOffset::parse("-07:00").seconds == -7 * 3600);
    CHECK(TzOffset::parse("+0530").seconds == 5 * 3600 + 30 * 60);
    CHECK_THROWS_AS(TzOffset::parse("America/Los_Angeles"), ValidationError);
    CHECK_THROWS_AS(TzOffset::parse("UTC-99"), ValidationError);
}

TEST_CASE("local civil day respects the study offset") {
    const TzOffset pdt = TzOffset::utc_minus_7();
    // 2016-06-16T02:00Z is still 2016-06-15 at UTC-7
    const Instant t = parse_rfc3339("2016-06-16T02:00:00Z");
    CHECK(format_civil_day(local_civil_day(t, pdt)) == "2016-06-15");
    CHECK(format_civil_day(local_civil_day(t, TzOffset{0})) == "2016-06-16");
}

TEST_CASE("csv reader handles quoting") {
    std::istringstream in("a,\"b,c\",\"say \"\"hi\"\"\"\r\nplain,2,3\n\"multi\nline\",x,y\n");
    auto row = csv::read_row(in);
    REQUIRE(row.has_value());
    CHECK((*row)[0] == "a");
    CHECK((*row)[1] == "b,c");
    CHECK((*row)[2] == "say \"hi\"");
    row = csv::read_row(in);
    REQUIRE(row.has_value());
    CHECK((*row)[0] == "plain");
    row = csv::read_row(in);
    REQUIRE(row.has_value());
    CHECK((*row)[0] == "multi\nline");
    CHECK_FALSE(csv::read_row(in).has_value());
}

TEST_CASE("csv write/read round trip") {
    rng::Engine eng(7);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<std::string> fields;
        const int n = static_cast<int>(rng::uniform_int(eng, 1, 5));
        for (int i = 0; i < n; ++i) {
            std::string f;
            const int len = static_cast<int>(rng::uniform_int(eng, 0, 8));
            const char alphabet[] = "ab,\"\n x";
            for (int k = 0; k < len; ++k)
                f.push_back(alphabet[rng::uniform_below(eng, sizeof alphabet - 1)]);
            fields.push_back(f);
        }
        std::ostringstream out;
        csv::write_row(out, fields);
        std::istringstream in(out.str());
        const auto back = csv::read_row(in);
        REQUIRE(back.has_value());
        CHECK(*back == fields);
    }
}

TEST_CASE("rng streams are deterministic and salted") {
    auto a = rng::make_engine(42, {rng::kStreamBootstrap, 3});
    auto b = rng::make_engine(42, {rng::kStreamBootstrap, 3});
    auto c = rng::make_engine(42, {rng::kStreamBootstrap, 4});
    CHECK(a() == b());
    CHECK(a() != c());
}

TEST_CASE("uniform_below stays in range") {
    rng::Engine eng(1);
    for (int i = 0; i < 1000; ++i) CHECK(rng::uniform_below(eng, 7) < 7);
    CHECK(rng::uniform_below(eng, 1) == 0);
}

TEST_CASE("sample_without_replacement yields distinct indices") {
    rng::Engine eng(5);
    const auto picked = rng::sample_without_replacement(eng, 100, 40);
    CHECK(picked.size() == 40);
    const std::set<std::uint32_t> unique(picked.begin(), picked.end());
    CHECK(unique.size() == 40);
    for (const auto i : unique) CHECK(i < 100);
    // k > n clamps
    const auto all = rng::sample_without_replacement(eng, 5, 10);
    CHECK(all.size() == 5);
}

TEST_CASE("poisson edge cases") {
    rng::Engine eng(9);
    CHECK(rng::poisson(eng, 0.0) == 0);
    double sum = 0.0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) sum += rng::poisson(eng, 2.0);
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("quantile uses linear interpolation") {
    CHECK(detail::quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == doctest::Approx(2.5));
    CHECK(detail::quantile({4.0, 1.0, 3.0, 2.0}, 0.0) == doctest::Approx(1.0));
    CHECK(detail::quantile({4.0, 1.0, 3.0, 2.0}, 1.0) == doctest::Approx(4.0));
    CHECK(detail::quantile({5.0}, 0.975) == doctest::Approx(5.0));
    CHECK(detail::quantile({0.0, 10.0}, 0.25) == doctest::Approx(2.5));
}

TEST_CASE("student-t critical values match tables") {
    CHECK(detail::t_critical_95(99) == doctest::Approx(1.9842).epsilon(1e-3));
    CHECK(detail::t_critical_95(10) == doctest::Approx(2.2281).epsilon(1e-3));
    CHECK(detail::t_critical_95(100000) == doctest::Approx(1.96).epsilon(1e-3));
}

}  // TEST_SUITE
