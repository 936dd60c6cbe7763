#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parksent/exposure.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

enum class Polarity { Negative, Neutral, Positive };
enum class FreqDirection { Down, Flat, Up };

std::string polarity_name(Polarity p);
std::string direction_name(FreqDirection d);

/// One word's share of a sentiment difference.
/// contribution = (score - H_ref) * (p_comp - p_ref), where the p's are
/// relative frequencies among lexicon-matched words, so contributions sum
/// exactly to H_comp - H_ref.
struct ShiftEntry {
    std::string word;
    double score = 0.0;
    double p_ref = 0.0;
    double p_comp = 0.0;
    double contribution = 0.0;
    Polarity polarity = Polarity::Neutral;    // positive: score >= 6, negative: score <= 4
    FreqDirection direction = FreqDirection::Flat;  // frequency in comparison vs reference
};

struct WordShiftResult {
    double h_ref = 0.0;
    double h_comp = 0.0;
    std::vector<ShiftEntry> entries;  // |contribution| descending, ties by word
};

/// Decompose the sentiment difference between two texts word by word.
/// Throws EmptyPoolError when either side has no lexicon-matched words.
WordShiftResult word_shift(const WordTable& reference, const WordTable& comparison,
                           const Lexicon& lexicon);

struct SeriesPoint {
    int bin = 0;
    std::optional<double> raw;       // nullopt: empty bin (gap)
    std::optional<double> smoothed;  // centered moving average over non-gap bins
};

struct FrequencySeries {
    std::string word;
    int smoothing_window = 3;
    std::vector<SeriesPoint> points;        // bins -half_window..+half_window
    std::optional<double> window_mean;      // mean of raw over non-gap bins
};

/// Relative frequency of one word per bin: count(word) / all tokens in the
/// bin (unscored words stay plottable). Smoothing is a centered moving
/// average of width smoothing_window (odd), truncated at the series edges;
/// gaps are excluded from both smoothing and the window mean, which is
/// computed from raw values and therefore independent of the smoothing
/// window.
FrequencySeries frequency_timeseries(const BinnedCorpus& binned, const std::string& word,
                                     int smoothing_window = 3, int half_window = 12);

}  // namespace parksent
