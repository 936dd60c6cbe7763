#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace parksent {

inline constexpr double kMinScore = 1.0;
inline constexpr double kMaxScore = 9.0;

struct LexiconEntry {
    std::string word;
    double score = 0.0;
};

/// Word -> happiness score dictionary on the 1..9 scale. Immutable in
/// practice: built once by load_lexicon and then only copied by the filter
/// operations, so it is safe to share across threads.
class Lexicon {
public:
    Lexicon() = default;

    /// Throws ValidationError on any invariant breach (duplicate word,
    /// out-of-range score, empty/whitespace word).
    void insert(std::string word, double score);

    std::optional<double> find(std::string_view word) const {
        const auto it = scores_.find(std::string(word));
        if (it == scores_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(std::string_view word) const { return find(word).has_value(); }

    std::size_t size() const { return scores_.size(); }
    bool empty() const { return scores_.empty(); }

    const std::map<std::string, double>& entries() const { return scores_; }

private:
    std::map<std::string, double> scores_;
};

/// Near-neutral exclusion band. Open mode drops scores strictly inside
/// (low, high); closed mode also drops the endpoints.
struct Lens {
    enum class Mode { Open, Closed };

    double low = 4.0;
    double high = 6.0;
    Mode mode = Mode::Open;

    bool excludes(double score) const {
        if (mode == Mode::Open) return score > low && score < high;
        return score >= low && score <= high;
    }
};

/// Read a two-column delimited file (word, score). Tab or comma separated,
/// one optional header row, UTF-8. Duplicate words are rejected with both
/// line numbers; scores outside [1, 9] and files with no entries are
/// rejected too. Words are lowercased on load.
Lexicon load_lexicon(std::istream& in);

/// Copy of the lexicon without the lens band. Idempotent.
Lexicon apply_lens(const Lexicon& lexicon, const Lens& lens);

/// Lowercase tokens of every facility name, deduplicated. Tokenization is
/// the corpus tokenizer, so a name matches the same way message text does.
std::set<std::string> park_name_stoplist(std::span<const std::string> facility_names);

/// Copy of the lexicon minus the stoplisted words.
Lexicon remove_words(const Lexicon& lexicon, const std::set<std::string>& stoplist);

}  // namespace parksent
