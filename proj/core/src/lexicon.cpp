#include "parksent/lexicon.hpp"

#include <cctype>
#include <charconv>
#include <istream>

#include "parksent/csv.hpp"
#include "parksent/errors.hpp"
#include "parksent/wordtable.hpp"

namespace parksent {

namespace {

std::string to_lower(std::string s) {
    for (char& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

bool has_whitespace(std::string_view s) {
    for (const char c : s)
        if (std::isspace(static_cast<unsigned char>(c))) return true;
    return false;
}

std::optional<double> parse_score(std::string_view s) {
    // strict: the whole field must be a number
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
    return v;
}

}  // namespace

void Lexicon::insert(std::string word, double score) {
    if (word.empty()) throw ValidationError("lexicon word is empty");
    if (has_whitespace(word))
        throw ValidationError("lexicon word '" + word + "' contains whitespace");
    if (score < kMinScore || score > kMaxScore)
        throw ValidationError("lexicon score " + csv::format_double(score) + " for '" + word +
                              "' outside [1, 9]");
    const auto [it, inserted] = scores_.emplace(std::move(word), score);
    if (!inserted) throw ValidationError("duplicate lexicon word '" + it->first + "'");
}

Lexicon load_lexicon(std::istream& in) {
    Lexicon lexicon;
    std::map<std::string, std::size_t> first_seen_line;
    std::size_t line_no = 0;
    bool first_row = true;
    for (;;) {
        auto row = csv::read_row(in);
        if (!row) break;
        ++line_no;
        if (row->size() == 1) {
            // maybe tab separated
            const auto tab = (*row)[0].find('\t');
            if (tab != std::string::npos) {
                std::string left = (*row)[0].substr(0, tab);
                std::string right = (*row)[0].substr(tab + 1);
                row = std::vector<std::string>{std::move(left), std::move(right)};
            }
        }
        if (row->size() == 1 && (*row)[0].empty()) continue;  // blank line
        if (row->size() < 2)
            throw ValidationError("lexicon line " + std::to_string(line_no) +
                                  ": expected word and score");

        const std::string word = to_lower((*row)[0]);
        const auto score = parse_score((*row)[1]);
        if (!score) {
            if (first_row) {
                first_row = false;  // header
                continue;
            }
            throw ValidationError("lexicon line " + std::to_string(line_no) +
                                  ": score '" + (*row)[1] + "' is not a number");
        }
        first_row = false;

        const auto seen = first_seen_line.find(word);
        if (seen != first_seen_line.end())
            throw ValidationError("duplicate lexicon word '" + word + "' (lines " +
                                  std::to_string(seen->second) + " and " +
                                  std::to_string(line_no) + ")");
        first_seen_line.emplace(word, line_no);

        try {
            lexicon.insert(word, *score);
        } catch (const ValidationError& e) {
            throw ValidationError("lexicon line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (lexicon.empty()) throw ValidationError("lexicon file has no entries");
    return lexicon;
}

Lexicon apply_lens(const Lexicon& lexicon, const Lens& lens) {
    Lexicon out;
    for (const auto& [word, score] : lexicon.entries())
        if (!lens.excludes(score)) out.insert(word, score);
    return out;
}

std::set<std::string> park_name_stoplist(std::span<const std::string> facility_names) {
    std::set<std::string> stoplist;
    for (const auto& name : facility_names) {
        const WordTable tokens = tokenize(name);
        for (const auto& [word, n] : tokens.counts) {
            (void)n;
            stoplist.insert(word);
        }
    }
    return stoplist;
}

Lexicon remove_words(const Lexicon& lexicon, const std::set<std::string>& stoplist) {
    Lexicon out;
    for (const auto& [word, score] : lexicon.entries())
        if (!stoplist.contains(word)) out.insert(word, score);
    return out;
}

}  // namespace parksent
