#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "parksent/exposure.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

/// How the bootstrap resamples: `runs` independent draws of
/// floor(fraction * N) messages without replacement, one RNG stream per run
/// derived from `seed`, so results are identical for any worker count.
struct BootstrapConfig {
    std::uint32_t runs = 100;
    double fraction = 0.8;
    std::uint64_t seed = 0;
    std::uint32_t threads = 1;
};

/// Sample size below which lexicon estimates are considered unreliable.
inline constexpr std::uint64_t kLowSampleWords = 1000;

struct SentimentEstimate {
    double mean = 0.0;            // full-set pooled sentiment
    std::vector<double> samples;  // one pooled sentiment per kept run
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t n_words = 0;    // lexicon-matched word count, full set
    std::uint64_t n_messages = 0;
    std::uint32_t discarded_runs = 0;
    bool low_sample = false;      // n_words <= 1000
};

struct DiffEstimate {
    double delta_mean = 0.0;      // full-set comparison minus reference
    std::vector<double> samples;  // per-run subsample differences
    double ci_low = 0.0;
    double ci_high = 0.0;
    double t_statistic = 0.0;
    bool reject_null = false;
    std::uint64_t n_ref_messages = 0;
    std::uint64_t n_comp_messages = 0;
    std::uint32_t discarded_runs = 0;
};

/// Pooled sentiment of a word table: sum(score * freq) / sum(freq) over the
/// lexicon-matched words. nullopt when nothing matches.
std::optional<double> sentiment_of(const WordTable& words, const Lexicon& lexicon);

/// Throwing flavor: EmptyPoolError when no word matches.
double sentiment(const WordTable& words, const Lexicon& lexicon);

// The interval and the duration test below rescale the spread of the
// without-replacement subsample statistics by sqrt(fraction / (1-fraction))
// before taking 2.5/97.5 percentiles. A fraction-f subsample of a set has
// (1-f)/f times the variance of the full-set estimate around the population
// value, so raw percentiles of the runs would understate uncertainty by that
// factor (exactly 2x too narrow at f = 0.8). The correction restores nominal
// ~95% coverage of a planted truth.

/// Bootstrap the pooled sentiment of a message set. Runs whose subsample
/// matches zero lexicon words are discarded and counted; all runs discarded
/// throws EmptyPoolError, as does a full set with zero matched words.
SentimentEstimate bootstrap_sentiment(std::span<const WordTable* const> messages,
                                      const Lexicon& lexicon, const BootstrapConfig& config);

/// Bootstrap the sentiment difference comparison - reference, subsampling
/// both sets independently in each run.
DiffEstimate change_in_sentiment(std::span<const WordTable* const> reference,
                                 std::span<const WordTable* const> comparison,
                                 const Lexicon& lexicon, const BootstrapConfig& config);

struct DurationResult {
    int hours = 0;
    std::vector<std::pair<int, DiffEstimate>> per_bin;  // bins tested, in order
};

/// Walk bins +1, +2, ... comparing each against the baseline pool
/// (bins -6..-2). Continue while the test rejects zero mean with a positive
/// difference; an empty or unmatched bin stops the walk. Returns the last
/// rejecting bin (0 when +1 already fails).
DurationResult duration(const BinnedCorpus& binned, const Lexicon& lexicon,
                        bool include_secondary_in_park, const BootstrapConfig& config,
                        const std::optional<std::set<std::string>>& allowed = std::nullopt);

struct CurvePoint {
    int bin = 0;
    std::optional<SentimentEstimate> estimate;  // nullopt: gap (no matched words)
};

/// Per-bin bootstrap estimates across the whole window, in bin order.
std::vector<CurvePoint> sentiment_curve(const BinnedCorpus& binned, const Lexicon& lexicon,
                                        const BootstrapConfig& config,
                                        const std::optional<std::set<std::string>>& allowed =
                                            std::nullopt);

struct ConvergencePoint {
    std::uint32_t runs = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double ci_width = 0.0;
};

/// Re-run the difference bootstrap at several run counts to show the
/// interval stabilizing (diagnostic, default 50/100/200).
std::vector<ConvergencePoint> convergence_check(std::span<const WordTable* const> reference,
                                                std::span<const WordTable* const> comparison,
                                                const Lexicon& lexicon, BootstrapConfig config,
                                                std::span<const std::uint32_t> run_counts);

namespace detail {
/// Linear-interpolation quantile of an unsorted sample (numpy default).
double quantile(std::vector<double> values, double q);
/// Two-sided Student-t critical value at alpha = 0.05.
double t_critical_95(std::uint32_t df);
}  // namespace detail

}  // namespace parksent
