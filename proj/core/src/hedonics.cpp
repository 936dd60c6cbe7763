#include "parksent/hedonics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "parksent/errors.hpp"
#include "parksent/rng.hpp"

namespace parksent {

namespace {

/// Lexicon-matched totals of one message, precomputed so each bootstrap run
/// is a handful of additions per sampled message.
struct MatchedTotals {
    double sum_score_freq = 0.0;
    std::uint64_t sum_freq = 0;
};

MatchedTotals match(const WordTable& words, const Lexicon& lexicon) {
    MatchedTotals t;
    for (const auto& [word, n] : words.counts) {
        if (const auto score = lexicon.find(word)) {
            t.sum_score_freq += *score * static_cast<double>(n);
            t.sum_freq += n;
        }
    }
    return t;
}

std::vector<MatchedTotals> match_all(std::span<const WordTable* const> messages,
                                     const Lexicon& lexicon) {
    std::vector<MatchedTotals> totals;
    totals.reserve(messages.size());
    for (const WordTable* m : messages) totals.push_back(match(*m, lexicon));
    return totals;
}

std::optional<double> pooled_sentiment(const std::vector<MatchedTotals>& totals,
                                       std::span<const std::uint32_t> picked) {
    double num = 0.0;
    std::uint64_t den = 0;
    for (const std::uint32_t i : picked) {
        num += totals[i].sum_score_freq;
        den += totals[i].sum_freq;
    }
    if (den == 0) return std::nullopt;
    return num / static_cast<double>(den);
}

std::optional<double> full_sentiment(const std::vector<MatchedTotals>& totals,
                                     std::uint64_t* n_words = nullptr) {
    double num = 0.0;
    std::uint64_t den = 0;
    for (const auto& t : totals) {
        num += t.sum_score_freq;
        den += t.sum_freq;
    }
    if (n_words) *n_words = den;
    if (den == 0) return std::nullopt;
    return num / static_cast<double>(den);
}

std::uint32_t subsample_size(std::size_t n, double fraction) {
    return static_cast<std::uint32_t>(std::floor(fraction * static_cast<double>(n)));
}

void validate_config(const BootstrapConfig& config) {
    if (config.runs < 1) throw ValidationError("bootstrap runs must be >= 1");
    if (!(config.fraction > 0.0) || config.fraction > 1.0)
        throw ValidationError("bootstrap fraction must be in (0, 1]");
}

/// Run `body(run_index)` for every run, optionally on several threads.
/// Each run writes only its own slot, so scheduling never shows in results.
template <typename Body>
void for_each_run(std::uint32_t runs, std::uint32_t threads, Body&& body) {
    if (threads <= 1 || runs <= 1) {
        for (std::uint32_t r = 0; r < runs; ++r) body(r);
        return;
    }
    const std::uint32_t workers = std::min(threads, runs);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint32_t r = w; r < runs; r += workers) body(r);
        });
    }
    for (auto& t : pool) t.join();
}

double spread_correction(double fraction) {
    // subsample variance deflation undone; degenerate at fraction == 1
    // where every subsample is the full set and the spread is genuinely 0
    if (fraction >= 1.0) return 0.0;
    return std::sqrt(fraction / (1.0 - fraction));
}

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

Interval corrected_percentile_interval(const std::vector<double>& samples, double fraction) {
    const double mean =
        std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    const double c = spread_correction(fraction);
    std::vector<double> rescaled;
    rescaled.reserve(samples.size());
    for (const double s : samples) rescaled.push_back(mean + (s - mean) * c);
    return Interval{detail::quantile(rescaled, 0.025), detail::quantile(rescaled, 0.975)};
}

double sample_sd(const std::vector<double>& samples, double mean) {
    if (samples.size() < 2) return 0.0;
    double ss = 0.0;
    for (const double s : samples) ss += (s - mean) * (s - mean);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

}  // namespace

namespace detail {

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 1) return values[0];
    const double h = q * static_cast<double>(n - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(h));
    if (i + 1 >= n) return values[n - 1];
    const double frac = h - static_cast<double>(i);
    return values[i] + (values[i + 1] - values[i]) * frac;
}

double t_critical_95(std::uint32_t df) {
    if (df == 0) return std::numeric_limits<double>::infinity();
    const boost::math::students_t_distribution<double> dist(static_cast<double>(df));
    return boost::math::quantile(dist, 0.975);
}

}  // namespace detail

std::optional<double> sentiment_of(const WordTable& words, const Lexicon& lexicon) {
    const MatchedTotals t = match(words, lexicon);
    if (t.sum_freq == 0) return std::nullopt;
    return t.sum_score_freq / static_cast<double>(t.sum_freq);
}

double sentiment(const WordTable& words, const Lexicon& lexicon) {
    const auto s = sentiment_of(words, lexicon);
    if (!s) throw EmptyPoolError("sentiment undefined: zero lexicon-matched words");
    return *s;
}

SentimentEstimate bootstrap_sentiment(std::span<const WordTable* const> messages,
                                      const Lexicon& lexicon, const BootstrapConfig& config) {
    validate_config(config);
    if (messages.empty()) throw EmptyPoolError("bootstrap_sentiment: no messages");

    const auto totals = match_all(messages, lexicon);
    SentimentEstimate est;
    est.n_messages = messages.size();
    const auto full = full_sentiment(totals, &est.n_words);
    if (!full)
        throw EmptyPoolError("bootstrap_sentiment: zero lexicon-matched words in " +
                             std::to_string(messages.size()) + " messages");
    est.mean = *full;
    est.low_sample = est.n_words <= kLowSampleWords;

    const std::uint32_t k = subsample_size(messages.size(), config.fraction);
    std::vector<std::optional<double>> run_values(config.runs);
    for_each_run(config.runs, config.threads, [&](std::uint32_t r) {
        auto eng = rng::make_engine(config.seed, {rng::kStreamBootstrap, r});
        auto picked =
            rng::sample_without_replacement(eng, static_cast<std::uint32_t>(messages.size()), k);
        // canonical accumulation order: float sums depend only on the set picked
        std::sort(picked.begin(), picked.end());
        run_values[r] = pooled_sentiment(totals, picked);
    });

    for (const auto& v : run_values) {
        if (v) est.samples.push_back(*v);
        else ++est.discarded_runs;
    }
    if (est.samples.empty())
        throw EmptyPoolError("bootstrap_sentiment: every run was discarded (no matched words)");

    const Interval ci = corrected_percentile_interval(est.samples, config.fraction);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

DiffEstimate change_in_sentiment(std::span<const WordTable* const> reference,
                                 std::span<const WordTable* const> comparison,
                                 const Lexicon& lexicon, const BootstrapConfig& config) {
    validate_config(config);
    if (reference.empty() || comparison.empty())
        throw EmptyPoolError("change_in_sentiment: empty message set");

    const auto ref_totals = match_all(reference, lexicon);
    const auto comp_totals = match_all(comparison, lexicon);
    const auto ref_full = full_sentiment(ref_totals);
    const auto comp_full = full_sentiment(comp_totals);
    if (!ref_full || !comp_full)
        throw EmptyPoolError("change_in_sentiment: zero lexicon-matched words on one side");

    DiffEstimate est;
    est.n_ref_messages = reference.size();
    est.n_comp_messages = comparison.size();
    est.delta_mean = *comp_full - *ref_full;

    const std::uint32_t k_ref = subsample_size(reference.size(), config.fraction);
    const std::uint32_t k_comp = subsample_size(comparison.size(), config.fraction);
    std::vector<std::optional<double>> run_values(config.runs);
    for_each_run(config.runs, config.threads, [&](std::uint32_t r) {
        auto eng = rng::make_engine(config.seed, {rng::kStreamBootstrap, r});
        auto ref_picked = rng::sample_without_replacement(
            eng, static_cast<std::uint32_t>(reference.size()), k_ref);
        auto comp_picked = rng::sample_without_replacement(
            eng, static_cast<std::uint32_t>(comparison.size()), k_comp);
        std::sort(ref_picked.begin(), ref_picked.end());
        std::sort(comp_picked.begin(), comp_picked.end());
        const auto ref_s = pooled_sentiment(ref_totals, ref_picked);
        const auto comp_s = pooled_sentiment(comp_totals, comp_picked);
        if (ref_s && comp_s) run_values[r] = *comp_s - *ref_s;
    });

    for (const auto& v : run_values) {
        if (v) est.samples.push_back(*v);
        else ++est.discarded_runs;
    }
    if (est.samples.empty())
        throw EmptyPoolError("change_in_sentiment: every run was discarded (no matched words)");

    const double mean_diff = std::accumulate(est.samples.begin(), est.samples.end(), 0.0) /
                             static_cast<double>(est.samples.size());
    const Interval ci = corrected_percentile_interval(est.samples, config.fraction);
    est.ci_low = ci.low;
    est.ci_high = ci.high;

    const double sd = sample_sd(est.samples, mean_diff);
    const double se = sd * spread_correction(config.fraction);
    if (se > 0.0) {
        est.t_statistic = mean_diff / se;
        est.reject_null =
            std::abs(est.t_statistic) >
            detail::t_critical_95(static_cast<std::uint32_t>(est.samples.size()) - 1);
    } else {
        // all subsamples identical: no evidence of spread; reject only a
        // nonzero constant difference
        est.t_statistic = 0.0;
        est.reject_null = mean_diff != 0.0 && config.fraction >= 1.0;
    }
    return est;
}

DurationResult duration(const BinnedCorpus& binned, const Lexicon& lexicon,
                        bool include_secondary_in_park, const BootstrapConfig& config,
                        const std::optional<std::set<std::string>>& allowed) {
    const auto baseline =
        select_messages(binned, kBaselineLowBin, kBaselineHighBin, allowed, true);
    std::vector<const WordTable*> baseline_words;
    baseline_words.reserve(baseline.size());
    for (const BinnedMessage* m : baseline) baseline_words.push_back(&m->words);
    if (baseline_words.empty())
        throw EmptyPoolError("duration: baseline pool is empty (bins -6..-2, word count 0)");

    DurationResult result;
    for (int k = 1; k <= binned.window_hours(); ++k) {
        const auto bin_msgs = select_messages(binned, k, k, allowed, include_secondary_in_park);
        std::vector<const WordTable*> bin_words;
        bin_words.reserve(bin_msgs.size());
        for (const BinnedMessage* m : bin_msgs) bin_words.push_back(&m->words);
        if (bin_words.empty()) break;  // nothing to test: fail to reject, stop

        BootstrapConfig bin_config = config;
        bin_config.seed = rng::stream_seed(config.seed,
                                           {rng::kStreamDuration, static_cast<std::uint64_t>(k)});
        DiffEstimate diff;
        try {
            diff = change_in_sentiment(baseline_words, bin_words, lexicon, bin_config);
        } catch (const EmptyPoolError&) {
            break;
        }
        const double mean_diff = std::accumulate(diff.samples.begin(), diff.samples.end(), 0.0) /
                                 static_cast<double>(diff.samples.size());
        const bool elevated = diff.reject_null && mean_diff > 0.0;
        result.per_bin.emplace_back(k, std::move(diff));
        if (!elevated) break;
        result.hours = k;
    }
    return result;
}

std::vector<CurvePoint> sentiment_curve(const BinnedCorpus& binned, const Lexicon& lexicon,
                                        const BootstrapConfig& config,
                                        const std::optional<std::set<std::string>>& allowed) {
    std::vector<CurvePoint> curve;
    const int w = binned.window_hours();
    for (int bin = -w; bin <= w; ++bin) {
        CurvePoint point;
        point.bin = bin;
        const auto msgs = select_messages(binned, bin, bin, allowed, true);
        std::vector<const WordTable*> words;
        words.reserve(msgs.size());
        for (const BinnedMessage* m : msgs) words.push_back(&m->words);
        if (!words.empty()) {
            BootstrapConfig bin_config = config;
            bin_config.seed = rng::stream_seed(config.seed,
                                               {rng::kStreamCurve, rng::bin_salt(bin)});
            try {
                point.estimate = bootstrap_sentiment(words, lexicon, bin_config);
            } catch (const EmptyPoolError&) {
                // gap: bin present but nothing matched
            }
        }
        curve.push_back(std::move(point));
    }
    return curve;
}

std::vector<ConvergencePoint> convergence_check(std::span<const WordTable* const> reference,
                                                std::span<const WordTable* const> comparison,
                                                const Lexicon& lexicon, BootstrapConfig config,
                                                std::span<const std::uint32_t> run_counts) {
    std::vector<ConvergencePoint> points;
    for (const std::uint32_t runs : run_counts) {
        config.runs = runs;
        const DiffEstimate est = change_in_sentiment(reference, comparison, lexicon, config);
        points.push_back(
            ConvergencePoint{runs, est.ci_low, est.ci_high, est.ci_high - est.ci_low});
    }
    return points;
}

}  // namespace parksent
