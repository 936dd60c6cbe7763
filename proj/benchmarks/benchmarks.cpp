#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "parksent/exposure.hpp"
#include "parksent/geo.hpp"
#include "parksent/hedonics.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/rng.hpp"
#include "parksent/synth.hpp"
#include "parksent/wordshift.hpp"
#include "parksent/wordtable.hpp"

using namespace parksent;

namespace {

std::string sample_text(rng::Engine& eng, int words) {
    static const char* pool[] = {"sunshine", "traffic",  "don't", "park",  "beach",
                                 "beautiful", "festival", "wait",  "happy", "no"};
    std::string text;
    for (int i = 0; i < words; ++i) {
        if (i) text += ' ';
        text += pool[rng::uniform_below(eng, 10)];
        if (i % 7 == 3) text += '!';
    }
    return text;
}

Lexicon bench_lexicon() {
    Lexicon lex;
    rng::Engine eng(12);
    for (int i = 0; i < 10000; ++i) {
        const double score = 1.0 + 8.0 * rng::uniform01(eng);
        lex.insert("word" + std::to_string(i), score);
    }
    lex.insert("sunshine", 7.9);
    lex.insert("traffic", 3.3);
    lex.insert("beach", 7.9);
    return lex;
}

SynthData bench_corpus(int users) {
    Scenario s;
    s.seed = 5;
    s.users = users;
    s.vocabulary = {{"calm", 6.5, 0.25}, {"warm", 7.0, 0.25}, {"bright", 7.5, 0.25},
                    {"bliss", 8.5, 0.25}};
    s.bins = {-6, -5, -4, -3, -2, 1, 2, 3};
    s.effect_profile = {{0, 0.2}};
    return generate(s);
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
    rng::Engine eng(3);
    std::vector<std::string> texts;
    for (int i = 0; i < 256; ++i) texts.push_back(sample_text(eng, 12));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tokenize(texts[i++ % texts.size()]));
    }
}
BENCHMARK(BM_Tokenize);

static void BM_PointInPolygon(benchmark::State& state) {
    const PolygonWithHoles annulus{{{0, 0}, {4, 0}, {4, 4}, {0, 4}},
                                   {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}}};
    rng::Engine eng(4);
    std::vector<GeoPoint> points;
    for (int i = 0; i < 1024; ++i)
        points.push_back({5.0 * rng::uniform01(eng), 5.0 * rng::uniform01(eng)});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(point_in_polygon(points[i++ % points.size()], annulus));
    }
}
BENCHMARK(BM_PointInPolygon);

static void BM_SentimentPooled(benchmark::State& state) {
    const Lexicon lex = bench_lexicon();
    rng::Engine eng(6);
    WordTable pool;
    for (int i = 0; i < state.range(0); ++i)
        pool.add("word" + std::to_string(rng::uniform_below(eng, 12000)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sentiment_of(pool, lex));
    }
}
BENCHMARK(BM_SentimentPooled)->Arg(1000)->Arg(10000);

static void BM_BootstrapChange(benchmark::State& state) {
    const SynthData data = bench_corpus(static_cast<int>(state.range(0)));
    std::istringstream corpus_in(data.corpus_jsonl());
    auto corpus = ingest_jsonl(corpus_in, {});
    const std::vector<ParkFacility> facilities = {data.park};
    spatial_join(corpus, facilities);
    const auto events = detect_exposures(corpus, TzOffset::utc_minus_7());
    const BinnedCorpus binned = assign_bins(corpus, events, 24);
    Lexicon lex;
    for (const auto& e : data.lexicon_entries) lex.insert(e.word, e.score);

    std::vector<const WordTable*> baseline, exposed;
    for (const auto* m : select_messages(binned, kBaselineLowBin, kBaselineHighBin))
        baseline.push_back(&m->words);
    for (const auto* m : select_messages(binned, 0, 0)) exposed.push_back(&m->words);

    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            change_in_sentiment(baseline, exposed, lex, {100, 0.8, ++seed, 1}));
    }
}
BENCHMARK(BM_BootstrapChange)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_AssignBins(benchmark::State& state) {
    const SynthData data = bench_corpus(500);
    std::istringstream corpus_in(data.corpus_jsonl());
    auto corpus = ingest_jsonl(corpus_in, {});
    const std::vector<ParkFacility> facilities = {data.park};
    spatial_join(corpus, facilities);
    const auto events = detect_exposures(corpus, TzOffset::utc_minus_7());
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign_bins(corpus, events, 24));
    }
}
BENCHMARK(BM_AssignBins)->Unit(benchmark::kMillisecond);

static void BM_WordShift(benchmark::State& state) {
    const Lexicon lex = bench_lexicon();
    rng::Engine eng(8);
    WordTable ref, comp;
    for (int i = 0; i < 5000; ++i) {
        ref.add("word" + std::to_string(rng::uniform_below(eng, 11000)), 1);
        comp.add("word" + std::to_string(rng::uniform_below(eng, 11000)), 1);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(word_shift(ref, comp, lex));
    }
}
BENCHMARK(BM_WordShift)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
