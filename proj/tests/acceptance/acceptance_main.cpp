// Acceptance suite: one criterion per entry, one PASS/FAIL line each.
// Criteria 4 and 8 exercise the installed CLI binary; point PARKSENT_BIN at
// it (ctest does this automatically).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "parksent/corpus.hpp"
#include "parksent/csv.hpp"
#include "parksent/errors.hpp"
#include "parksent/exposure.hpp"
#include "parksent/geo.hpp"
#include "parksent/hedonics.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/rng.hpp"
#include "parksent/synth.hpp"
#include "parksent/vegetation.hpp"
#include "parksent/wordshift.hpp"
#include "winding_oracle.hpp"

namespace fs = std::filesystem;
using namespace parksent;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

std::string bin_path() {
    const char* env = std::getenv("PARKSENT_BIN");
    require(env && *env, "PARKSENT_BIN is not set (path to the parksent binary)");
    require(fs::exists(env), std::string("PARKSENT_BIN points at a missing file: ") + env);
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = bin_path() + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "missing expected output " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

/// row lookup for small CSVs: header -> index, first data row
std::pair<std::vector<std::string>, std::vector<std::string>> read_two_rows(const fs::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open " + path.string());
    auto header = csv::read_row(in);
    auto row = csv::read_row(in);
    require(header.has_value() && row.has_value(), path.string() + " is too short");
    return {*header, *row};
}

double field(const std::pair<std::vector<std::string>, std::vector<std::string>>& rows,
             const std::string& name) {
    for (std::size_t i = 0; i < rows.first.size(); ++i)
        if (rows.first[i] == name) return std::stod(rows.second[i]);
    throw CheckFailure("column '" + name + "' not found");
}

Scenario recovery_scenario(std::uint64_t seed, int users) {
    Scenario s;
    s.seed = seed;
    s.users = users;
    s.messages_per_user_per_bin = 1.0;
    s.vocabulary = {{"calm", 6.5, 0.2},
                    {"warm", 7.0, 0.2},
                    {"bright", 7.5, 0.2},
                    {"cheer", 8.0, 0.2},
                    {"bliss", 8.5, 0.2}};
    s.bins = {-6, -5, -4, -3, -2};
    s.effect_profile = {{0, 0.23}};
    return s;
}

Lexicon lexicon_of(const Scenario& s) {
    Lexicon lex;
    for (const auto& w : s.vocabulary) lex.insert(w.word, w.score);
    return lex;
}

BinnedCorpus run_pipeline(const SynthData& data, int window_hours = 24) {
    std::istringstream corpus_in(data.corpus_jsonl());
    auto corpus = ingest_jsonl(corpus_in, {});
    const std::vector<ParkFacility> facilities = {data.park};
    spatial_join(corpus, facilities);
    const auto filtered = filter_users(corpus, {});
    const auto events = detect_exposures(filtered, TzOffset::utc_minus_7());
    return assign_bins(filtered, events, window_hours);
}

std::vector<const WordTable*> words_in(const BinnedCorpus& binned, int lo, int hi) {
    std::vector<const WordTable*> out;
    for (const BinnedMessage* m : select_messages(binned, lo, hi)) out.push_back(&m->words);
    return out;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir =
        fs::temp_directory_path() / ("parksent_acc_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------- criteria

void criterion_1_binning() {
    auto msg = [](const char* id, const char* ts, bool park) {
        MessageRecord m;
        m.id = id;
        m.user_id = "u1";
        m.timestamp = parse_rfc3339(ts);
        m.text = "words";
        m.lat = 37.77;
        m.lon = park ? -122.44 : -122.39;
        if (park) m.facility_id = "park-1";
        return m;
    };
    std::vector<MessageRecord> corpus = {msg("pre", "2016-06-15T10:30:00-07:00", false),
                                         msg("expo", "2016-06-15T14:00:00-07:00", true),
                                         msg("post", "2016-06-15T16:15:00-07:00", false)};
    const auto events = detect_exposures(corpus, TzOffset::utc_minus_7());
    require(events.size() == 1, "expected one exposure event");
    const BinnedCorpus binned = assign_bins(corpus, events, 24);
    int pre = 99, expo = 99, post = 99;
    for (const auto& m : binned.messages()) {
        if (m.id == "pre") pre = m.bin;
        if (m.id == "expo") expo = m.bin;
        if (m.id == "post") post = m.bin;
    }
    require(pre == -4, "pre message must land in bin -4, got " + std::to_string(pre));
    require(expo == 0, "exposure message must land in bin 0, got " + std::to_string(expo));
    require(post == 3, "post message must land in bin +3, got " + std::to_string(post));
}

void criterion_2_eq1_battery() {
    Lexicon lex;
    lex.insert("sunshine", 7.9);
    lex.insert("traffic", 3.3);
    auto table = [](std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
        WordTable t;
        for (const auto& [w, n] : entries) t.add(w, n);
        return t;
    };
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };

    require(close(sentiment(table({{"sunshine", 1}}), lex), 7.9), "sentiment({sunshine}) != 7.9");
    require(close(sentiment(table({{"traffic", 1}}), lex), 3.3), "sentiment({traffic}) != 3.3");
    require(close(sentiment(table({{"sunshine", 1}, {"traffic", 1}}), lex), 5.6),
            "equal mixture != 5.6");
    require(close(sentiment(table({{"sunshine", 3}, {"traffic", 1}}), lex), 6.75),
            "3:1 mixture != 6.75");

    const std::vector<WordTable> ref = {table({{"sunshine", 1}})};
    const std::vector<WordTable> comp = {table({{"traffic", 1}})};
    std::vector<const WordTable*> ref_p = {&ref[0]}, comp_p = {&comp[0]};
    const auto diff = change_in_sentiment(ref_p, comp_p, lex, {10, 1.0, 1, 1});
    require(close(diff.delta_mean, -4.6), "disjoint-vocabulary delta != -4.6");

    const auto shift = word_shift(table({{"sunshine", 1}, {"traffic", 1}}),
                                  table({{"sunshine", 1}}), lex);
    require(close(shift.entries[0].contribution, 1.15) &&
                close(shift.entries[1].contribution, 1.15),
            "hand-computed shift contributions != +1.15");
    require(close(shift.entries[0].contribution + shift.entries[1].contribution,
                  shift.h_comp - shift.h_ref),
            "shift contributions do not sum to the difference");
}

void criterion_3_shift_identity() {
    rng::Engine eng(90210);
    Lexicon lex;
    for (int i = 0; i < 60; ++i) lex.insert("w" + std::to_string(i), 1.0 + 8.0 * rng::uniform01(eng));
    int tested = 0;
    while (tested < 1000) {
        WordTable ref, comp;
        const int n_ref = static_cast<int>(rng::uniform_int(eng, 1, 80));
        const int n_comp = static_cast<int>(rng::uniform_int(eng, 1, 80));
        for (int i = 0; i < n_ref; ++i)
            ref.add("w" + std::to_string(rng::uniform_below(eng, 70)), 1 + rng::uniform_below(eng, 6));
        for (int i = 0; i < n_comp; ++i)
            comp.add("w" + std::to_string(rng::uniform_below(eng, 70)), 1 + rng::uniform_below(eng, 6));
        WordShiftResult result;
        try {
            result = word_shift(ref, comp, lex);
        } catch (const EmptyPoolError&) {
            continue;
        }
        ++tested;
        double total = 0.0;
        for (const auto& e : result.entries) total += e.contribution;
        const double expected = result.h_comp - result.h_ref;
        const double tolerance = 1e-9 * std::max({1.0, std::abs(total), std::abs(expected)});
        require(std::abs(total - expected) <= tolerance,
                "identity violated at pair " + std::to_string(tested));
    }
}

void criterion_4_synthetic_recovery() {
    // single large run through the CLI subcommands
    const fs::path dir = fresh_dir("c4");
    const Scenario big = recovery_scenario(20160519, 4000);
    {
        std::ostringstream scenario_json;
        scenario_json << "{\"seed\":" << big.seed << ",\"users\":" << big.users
                      << ",\"messages_per_user_per_bin\":1.0,"
                      << "\"vocabulary\":["
                      << "{\"word\":\"calm\",\"score\":6.5,\"probability\":0.2},"
                      << "{\"word\":\"warm\",\"score\":7.0,\"probability\":0.2},"
                      << "{\"word\":\"bright\",\"score\":7.5,\"probability\":0.2},"
                      << "{\"word\":\"cheer\",\"score\":8.0,\"probability\":0.2},"
                      << "{\"word\":\"bliss\",\"score\":8.5,\"probability\":0.2}],"
                      << "\"effect_profile\":{\"0\":0.23},"
                      << "\"bins\":[-6,-5,-4,-3,-2]}";
        spit(dir / "scenario.json", scenario_json.str());
    }
    const std::string d = dir.string();
    require(run_cli("synth --scenario " + d + "/scenario.json --out " + d + "/synth") == 0,
            "synth subcommand failed");
    require(run_cli("ingest --corpus " + d + "/synth/corpus.jsonl --out " + d + "/ingest") == 0,
            "ingest subcommand failed");
    require(run_cli("join --corpus " + d + "/ingest/corpus.jsonl --facilities " + d +
                    "/synth/facilities.geojson --out " + d + "/join") == 0,
            "join subcommand failed");
    require(run_cli("bin --corpus " + d + "/join/annotated.jsonl --out " + d + "/bin") == 0,
            "bin subcommand failed");
    require(run_cli("change --binned " + d + "/bin/binned.json --lexicon " + d +
                    "/synth/lexicon.csv --facilities " + d +
                    "/synth/facilities.geojson --seed 7 --out " + d + "/change") == 0,
            "change subcommand failed");
    const auto rows = read_two_rows(dir / "change" / "change.csv");
    const double delta = field(rows, "delta_mean");
    require(std::abs(delta - 0.23) <= 0.02,
            "recovered delta " + csv::format_double(delta) + " outside 0.23 +/- 0.02");

    // verify words-per-bin floor on the scenario actually used
    const SynthData data = generate(big);
    const BinnedCorpus binned = run_pipeline(data);
    for (int bin = -6; bin <= 0; ++bin) {
        if (bin == -1) continue;
        require(binned.bin_table(bin).total >= 1000,
                "bin " + std::to_string(bin) + " has fewer than 1000 words");
    }

    // 50 seeded replications: corrected 95% interval covers the truth >= 85%
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
        const Scenario s = recovery_scenario(1000 + rep, 200);
        const SynthData rep_data = generate(s);
        const BinnedCorpus rep_binned = run_pipeline(rep_data);
        const auto baseline = words_in(rep_binned, kBaselineLowBin, kBaselineHighBin);
        const auto exposed = words_in(rep_binned, 0, 0);
        const auto est = change_in_sentiment(baseline, exposed, lexicon_of(s),
                                             {100, 0.8, 555 + rep, 1});
        if (est.ci_low <= 0.23 && 0.23 <= est.ci_high) ++covered;
    }
    require(covered >= 43, "interval covered the planted shift in only " +
                               std::to_string(covered) + "/50 replications (need >= 43)");
}

void criterion_5_duration_oracle() {
    int within = 0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        Scenario s = recovery_scenario(3000 + rep, 200);
        s.bins = {-6, -5, -4, -3, -2, 1, 2, 3, 4, 5};
        s.effect_profile = {{0, 0.23}, {1, 0.2}, {2, 0.15}, {3, 0.1}};
        const SynthData data = generate(s);
        const BinnedCorpus binned = run_pipeline(data);
        const auto result = duration(binned, lexicon_of(s), true, {100, 0.8, 777 + rep, 1});
        if (result.hours >= 2 && result.hours <= 4) ++within;
    }
    require(within >= 16, "planted 3-hour decay recovered as 3 +/- 1 in only " +
                              std::to_string(within) + "/20 replications (need >= 16)");

    int zeros = 0;
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        Scenario s = recovery_scenario(4000 + rep, 200);
        s.bins = {-6, -5, -4, -3, -2, 1, 2, 3, 4, 5};
        s.effect_profile.clear();
        const SynthData data = generate(s);
        const BinnedCorpus binned = run_pipeline(data);
        const auto result = duration(binned, lexicon_of(s), true, {100, 0.8, 888 + rep, 1});
        if (result.hours == 0) ++zeros;
    }
    require(zeros >= 18, "null profile gave duration 0 in only " + std::to_string(zeros) +
                             "/20 replications (need >= 18)");
}

void criterion_6_pip_oracle() {
    rng::Engine eng(6174);
    int checked = 0;
    while (checked < 10000) {
        PolygonWithHoles poly{testsupport::random_convex_polygon(eng, 0.0, 0.0, 1.0), {}};
        const GeoPoint p{3.0 * (rng::uniform01(eng) - 0.5), 3.0 * (rng::uniform01(eng) - 0.5)};
        if (testsupport::on_any_boundary(p, poly)) continue;
        require(point_in_polygon(p, poly) == testsupport::winding_inside(p, poly),
                "ray cast disagreed with the winding oracle at pair " + std::to_string(checked));
        ++checked;
    }

    // polygon with a hole
    const PolygonWithHoles annulus{{{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                                   {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}}};
    int hole_checked = 0;
    while (hole_checked < 500) {
        const GeoPoint p{5.0 * rng::uniform01(eng) - 0.5, 5.0 * rng::uniform01(eng) - 0.5};
        if (testsupport::on_any_boundary(p, annulus)) continue;
        require(point_in_polygon(p, annulus) == testsupport::winding_inside(p, annulus),
                "ray cast disagreed with the winding oracle inside the annulus");
        ++hole_checked;
    }
    require(!point_in_polygon({2.0, 2.0}, annulus), "hole interior must be outside");
}

void criterion_7_ndvi_exactness() {
    // checkerboard: ndvi values exactly 0.0 and 0.4, mean exactly 0.2
    RasterGrid g;
    g.width = 4;
    g.height = 4;
    g.origin_lon = 0.0;
    g.origin_lat = 4.0;
    g.pixel_dx = 1.0;
    g.pixel_dy = -1.0;
    g.nir.resize(16);
    g.red.resize(16);
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) {
            const bool high = (row + col) % 2 == 0;
            g.nir[row * 4 + col] = high ? 0.875 : 0.25;
            g.red[row * 4 + col] = high ? 0.375 : 0.25;
        }
    ParkFacility park;
    park.id = "p";
    park.name = "P";
    park.geometry.push_back(PolygonWithHoles{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {}});
    park.acres = 1.0;

    const auto checker = park_stats(g, park, {}, 0.2);
    require(checker.mean_ndvi == 0.2, "checkerboard mean NDVI not exactly 0.2");
    require(checker.percent_vegetated == 50.0, "checkerboard percent vegetated not exactly 50");

    // uniform with the left half under water
    std::fill(g.nir.begin(), g.nir.end(), 0.75);
    std::fill(g.red.begin(), g.red.end(), 0.25);
    const std::vector<PolygonWithHoles> water = {
        PolygonWithHoles{{{0, 0}, {2, 0}, {2, 4}, {0, 4}}, {}}};
    const auto masked = park_stats(g, park, water, 0.2);
    require(masked.mean_ndvi == 0.5, "masked mean NDVI not exactly 0.5");
    require(masked.percent_vegetated == 100.0, "masked percent vegetated not exactly 100");
    require(masked.pixels_water == 8, "expected half the pixels under water");

    rng::Engine eng(777);
    for (int i = 0; i < 10000; ++i) {
        const double a = rng::uniform01(eng);
        const double b = rng::uniform01(eng);
        const auto fwd = ndvi(a, b);
        const auto bwd = ndvi(b, a);
        if (!fwd) {
            require(!bwd, "antisymmetry broken on undefined pair");
            continue;
        }
        require(*fwd == -*bwd, "antisymmetry broken at pair " + std::to_string(i));
    }
}

void criterion_8_determinism() {
    const fs::path dir = fresh_dir("c8");
    const std::string d = dir.string();
    {
        Scenario s = recovery_scenario(11, 200);
        s.bins = {-6, -5, -4, -3, -2, 1, 2, 3};
        s.effect_profile = {{0, 0.23}, {1, 0.15}};
        const SynthData data = generate(s);
        spit(dir / "corpus.jsonl", data.corpus_jsonl());
        spit(dir / "facilities.geojson", data.facility_geojson());
        spit(dir / "lexicon.csv", data.lexicon_csv());
    }
    require(run_cli("ingest --corpus " + d + "/corpus.jsonl --out " + d + "/i") == 0, "ingest failed");
    require(run_cli("join --corpus " + d + "/i/corpus.jsonl --facilities " + d +
                    "/facilities.geojson --out " + d + "/j") == 0,
            "join failed");
    require(run_cli("bin --corpus " + d + "/j/annotated.jsonl --out " + d + "/b") == 0, "bin failed");

    const std::string analysis_args = " --binned " + d + "/b/binned.json --lexicon " + d +
                                      "/lexicon.csv --facilities " + d +
                                      "/facilities.geojson --seed 13";
    // same seed, two runs, byte-identical data files
    for (const char* sub : {"change", "curve", "duration"}) {
        const std::string s1 = d + "/" + sub + "1";
        const std::string s2 = d + "/" + sub + "2";
        require(run_cli(std::string(sub) + analysis_args + " --out " + s1) == 0,
                std::string(sub) + " run 1 failed");
        require(run_cli(std::string(sub) + analysis_args + " --out " + s2) == 0,
                std::string(sub) + " run 2 failed");
        const std::string data_file = std::string(sub) == "curve"   ? "curve.csv"
                                      : std::string(sub) == "change" ? "change.csv"
                                                                     : "duration.csv";
        require(slurp(fs::path(s1) / data_file) == slurp(fs::path(s2) / data_file),
                std::string(sub) + " reruns differ");
    }
    require(slurp(d + "/duration1/duration.json") == slurp(d + "/duration2/duration.json"),
            "duration.json reruns differ");

    // one worker vs several
    require(run_cli("change" + analysis_args + " --threads 1 --out " + d + "/t1") == 0,
            "threads=1 change failed");
    require(run_cli("change" + analysis_args + " --threads 4 --out " + d + "/t4") == 0,
            "threads=4 change failed");
    require(slurp(d + "/t1/change.csv") == slurp(d + "/t4/change.csv"),
            "results differ across worker counts");

    // synth determinism through the CLI
    spit(dir / "scen.json",
         "{\"seed\":3,\"users\":20,\"vocabulary\":[{\"word\":\"good\",\"score\":8.0,"
         "\"probability\":0.5},{\"word\":\"bad\",\"score\":2.0,\"probability\":0.5}],"
         "\"bins\":[-3,1]}");
    require(run_cli("synth --scenario " + d + "/scen.json --out " + d + "/s1") == 0, "synth 1 failed");
    require(run_cli("synth --scenario " + d + "/scen.json --out " + d + "/s2") == 0, "synth 2 failed");
    require(slurp(d + "/s1/corpus.jsonl") == slurp(d + "/s2/corpus.jsonl"),
            "synth reruns differ");
}

void criterion_9_report_shape() {
    const fs::path dir = fresh_dir("c9");
    const std::string d = dir.string();

    // one small raster covering three single-category facilities
    RasterGrid g;
    g.width = 8;
    g.height = 8;
    g.origin_lon = 0.0;
    g.origin_lat = 8.0;
    g.pixel_dx = 1.0;
    g.pixel_dy = -1.0;
    g.nir.assign(64, 0.75);
    g.red.assign(64, 0.25);
    spit(dir / "raster.json", g.to_json_string());

    auto facility_json = [](const char* id, const char* name, const char* category, double x0,
                            double y0) {
        std::ostringstream out;
        out << "{\"type\":\"Feature\",\"properties\":{\"id\":\"" << id << "\",\"name\":\"" << name
            << "\",\"category\":\"" << category << "\",\"acres\":12.5},"
            << "\"geometry\":{\"type\":\"Polygon\",\"coordinates\":[[[" << x0 << "," << y0
            << "],[" << x0 + 2 << "," << y0 << "],[" << x0 + 2 << "," << y0 + 2 << "],[" << x0
            << "," << y0 + 2 << "],[" << x0 << "," << y0 << "]]]}}";
        return out.str();
    };
    spit(dir / "facilities.geojson",
         "{\"type\":\"FeatureCollection\",\"features\":[" +
             facility_json("r", "Big Meadow", "Regional Park", 0, 0) + "," +
             facility_json("n", "Corner Playground", "Neighborhood Park or Playground", 3, 3) +
             "," + facility_json("c", "Old Plaza", "Civic Plaza or Square", 5, 5) + "]}");

    require(run_cli("veg --raster " + d + "/raster.json --facilities " + d +
                    "/facilities.geojson --out " + d + "/veg") == 0,
            "veg subcommand failed");
    require(run_cli("report --veg " + d + "/veg/veg.csv --out " + d + "/report") == 0,
            "report subcommand failed");

    std::ifstream in(dir / "report" / "report.csv");
    auto header = csv::read_row(in);
    require(header.has_value(), "report.csv is empty");
    const std::vector<std::string> expected = {"category", "count", "mean_acres", "mean_ndvi",
                                               "mean_percent_vegetated"};
    require(*header == expected, "report.csv header is not the four Table-1 columns");
    std::vector<std::string> categories;
    for (;;) {
        const auto row = csv::read_row(in);
        if (!row) break;
        require(row->size() == 5, "report row does not have exactly 5 fields");
        categories.push_back((*row)[0]);
    }
    const std::vector<std::string> expected_categories = {
        "Regional Park", "Neighborhood Park or Playground", "Civic Plaza or Square"};
    require(categories == expected_categories, "report rows are not the three primary categories");
}

void criterion_10_lens() {
    std::istringstream in("w33,3.3\nw49,4.9\nw52,5.2\nw55,5.5\nw65,6.5\nw79,7.9\n");
    const Lexicon raw = load_lexicon(in);
    const Lexicon filtered = apply_lens(raw, Lens{});
    require(filtered.size() == 3, "default lens must retain exactly 3 of 6 scores");
    require(filtered.contains("w33") && filtered.contains("w65") && filtered.contains("w79"),
            "default lens must retain exactly {3.3, 6.5, 7.9}");
    require(!filtered.contains("w49") && !filtered.contains("w52") && !filtered.contains("w55"),
            "default lens must exclude {4.9, 5.2, 5.5}");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "binning worked example (-4, 0, +3)", criterion_1_binning},
        {2, "pooled sentiment unit battery at 1e-12", criterion_2_eq1_battery},
        {3, "word-shift exact-sum identity on 1000 random pairs", criterion_3_shift_identity},
        {4, "synthetic recovery of a +0.23 planted shift", criterion_4_synthetic_recovery},
        {5, "duration oracle: 3-hour decay and null profiles", criterion_5_duration_oracle},
        {6, "point-in-polygon agrees with the winding oracle", criterion_6_pip_oracle},
        {7, "NDVI exactness and antisymmetry", criterion_7_ndvi_exactness},
        {8, "seeded reruns and worker counts are byte-identical", criterion_8_determinism},
        {9, "report emits the Table-1 column shape", criterion_9_report_shape},
        {10, "default lens keeps exactly {3.3, 6.5, 7.9}", criterion_10_lens},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", seconds);
        if (failure.empty()) {
            std::cout << "[PASS] criterion " << criterion.number << ": " << criterion.name << " ("
                      << timing << ")\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << criterion.number << ": " << criterion.name << " ("
                      << timing << ") - " << failure << "\n";
        }
        std::cout.flush();
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all 10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
