#include "parksent/wordshift.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "parksent/errors.hpp"

namespace parksent {

namespace {

struct MatchedFreqs {
    std::map<std::string, std::uint64_t> counts;  // lexicon-matched only
    std::uint64_t total = 0;
};

MatchedFreqs matched(const WordTable& words, const Lexicon& lexicon) {
    MatchedFreqs m;
    for (const auto& [word, n] : words.counts) {
        if (lexicon.contains(word)) {
            m.counts.emplace(word, n);
            m.total += n;
        }
    }
    return m;
}

}  // namespace

std::string polarity_name(Polarity p) {
    switch (p) {
        case Polarity::Negative: return "negative";
        case Polarity::Neutral: return "neutral";
        case Polarity::Positive: return "positive";
    }
    return "neutral";
}

std::string direction_name(FreqDirection d) {
    switch (d) {
        case FreqDirection::Down: return "down";
        case FreqDirection::Flat: return "flat";
        case FreqDirection::Up: return "up";
    }
    return "flat";
}

WordShiftResult word_shift(const WordTable& reference, const WordTable& comparison,
                           const Lexicon& lexicon) {
    const MatchedFreqs ref = matched(reference, lexicon);
    const MatchedFreqs comp = matched(comparison, lexicon);
    if (ref.total == 0 || comp.total == 0)
        throw EmptyPoolError("word_shift: zero lexicon-matched words on one side");

    auto h = [&](const MatchedFreqs& m) {
        double num = 0.0;
        for (const auto& [word, n] : m.counts) num += *lexicon.find(word) * static_cast<double>(n);
        return num / static_cast<double>(m.total);
    };

    WordShiftResult result;
    result.h_ref = h(ref);
    result.h_comp = h(comp);

    std::map<std::string, bool> vocabulary;
    for (const auto& [word, n] : ref.counts) {
        (void)n;
        vocabulary[word] = true;
    }
    for (const auto& [word, n] : comp.counts) {
        (void)n;
        vocabulary[word] = true;
    }

    for (const auto& [word, present] : vocabulary) {
        (void)present;
        const double score = *lexicon.find(word);
        ShiftEntry entry;
        entry.word = word;
        entry.score = score;
        const auto ref_it = ref.counts.find(word);
        const auto comp_it = comp.counts.find(word);
        entry.p_ref = ref_it == ref.counts.end()
                          ? 0.0
                          : static_cast<double>(ref_it->second) / static_cast<double>(ref.total);
        entry.p_comp = comp_it == comp.counts.end()
                           ? 0.0
                           : static_cast<double>(comp_it->second) / static_cast<double>(comp.total);
        entry.contribution = (score - result.h_ref) * (entry.p_comp - entry.p_ref);
        entry.polarity = score >= 6.0   ? Polarity::Positive
                         : score <= 4.0 ? Polarity::Negative
                                        : Polarity::Neutral;
        entry.direction = entry.p_comp > entry.p_ref   ? FreqDirection::Up
                          : entry.p_comp < entry.p_ref ? FreqDirection::Down
                                                       : FreqDirection::Flat;
        result.entries.push_back(std::move(entry));
    }

    std::sort(result.entries.begin(), result.entries.end(),
              [](const ShiftEntry& a, const ShiftEntry& b) {
                  const double ma = std::abs(a.contribution);
                  const double mb = std::abs(b.contribution);
                  if (ma != mb) return ma > mb;
                  return a.word < b.word;
              });
    return result;
}

FrequencySeries frequency_timeseries(const BinnedCorpus& binned, const std::string& word,
                                     int smoothing_window, int half_window) {
    if (word.empty()) throw ValidationError("frequency_timeseries: empty word");
    if (smoothing_window < 1 || smoothing_window % 2 == 0)
        throw ValidationError("smoothing window must be a positive odd integer");
    if (half_window < 0) throw ValidationError("half window must be >= 0");

    FrequencySeries series;
    series.word = word;
    series.smoothing_window = smoothing_window;

    // raw relative frequency per bin; empty bins stay as gaps
    std::vector<std::optional<double>> raw;
    for (int bin = -half_window; bin <= half_window; ++bin) {
        const WordTable table = binned.bin_table(bin);
        if (table.total == 0) {
            raw.push_back(std::nullopt);
            continue;
        }
        raw.push_back(static_cast<double>(table.count(word)) / static_cast<double>(table.total));
    }

    const int reach = (smoothing_window - 1) / 2;
    const int n = static_cast<int>(raw.size());
    double mean_sum = 0.0;
    int mean_count = 0;
    for (int i = 0; i < n; ++i) {
        SeriesPoint point;
        point.bin = i - half_window;
        point.raw = raw[i];
        if (raw[i]) {
            mean_sum += *raw[i];
            ++mean_count;
            double s = 0.0;
            int c = 0;
            for (int k = std::max(0, i - reach); k <= std::min(n - 1, i + reach); ++k) {
                if (raw[k]) {
                    s += *raw[k];
                    ++c;
                }
            }
            point.smoothed = s / static_cast<double>(c);
        }
        series.points.push_back(point);
    }
    if (mean_count > 0) series.window_mean = mean_sum / static_cast<double>(mean_count);
    return series;
}

}  // namespace parksent
