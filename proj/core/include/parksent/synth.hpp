#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "parksent/corpus.hpp"
#include "parksent/geo.hpp"
#include "parksent/lexicon.hpp"
#include "parksent/timeutil.hpp"

namespace parksent {

struct VocabularyWord {
    std::string word;
    double score = 0.0;
    double probability = 0.0;  // baseline mixture weight
};

/// Synthetic-corpus recipe with closed-form expected sentiment per bin.
/// Per-bin shifts tilt the baseline mixture linearly along
/// p0(w) * (score(w) - H0), which moves expected sentiment by exactly the
/// requested amount while keeping the mixture normalized; a shift beyond
/// what the vocabulary can express makes some weight negative and is
/// rejected as infeasible.
struct Scenario {
    std::uint64_t seed = 1;
    int users = 100;
    double messages_per_user_per_bin = 1.0;  // Poisson rate, non-exposure bins
    int words_per_message_min = 3;
    int words_per_message_max = 12;
    std::vector<VocabularyWord> vocabulary;
    std::map<int, double> effect_profile;  // bin -> sentiment shift
    std::vector<int> bins;                 // non-zero bins to populate; empty = all in window
    int window_hours = 24;
    std::string exposure_time = "2016-06-15T12:00:00-07:00";
    std::string park_name = "Synthetic Commons";
    std::string park_category = "Regional Park";

    static Scenario from_json(std::istream& in);

    /// Throws ValidationError on any inconsistency (probabilities off,
    /// infeasible tilt, vocabulary words that do not survive tokenization,
    /// park-name tokens colliding with vocabulary words).
    void validate() const;

    double baseline_sentiment() const;
    /// Tilted mixture for a bin (baseline when the profile has no entry).
    std::vector<double> mixture_for_bin(int bin) const;
    /// Closed-form expected pooled sentiment for a bin.
    double expected_sentiment(int bin) const;
};

struct GroundTruth {
    std::uint64_t seed = 0;
    double baseline_sentiment = 0.0;
    std::map<int, double> expected_sentiment;  // per generated bin
    std::map<int, double> planted_shift;
};

struct SynthData {
    std::vector<MessageRecord> messages;  // generation order
    ParkFacility park;
    std::vector<LexiconEntry> lexicon_entries;
    GroundTruth truth;

    std::string corpus_jsonl() const;
    std::string facility_geojson() const;
    std::string lexicon_csv() const;
    std::string ground_truth_json() const;
};

/// Deterministic generation: same scenario (seed included) gives
/// byte-identical output files. Exactly one exposure message per user at the
/// configured time, placed inside the synthetic park; every other message
/// sits outside it.
SynthData generate(const Scenario& scenario);

}  // namespace parksent
