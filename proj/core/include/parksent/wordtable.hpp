#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace parksent {

/// Word-frequency table. Ordered map so iteration (and therefore every
/// accumulation and serialization built on it) is deterministic.
/// Invariant: total == sum of counts; no zero-count entries are kept.
struct WordTable {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;

    bool empty() const { return counts.empty(); }

    void add(std::string_view word, std::uint64_t n = 1) {
        if (n == 0) return;
        counts[std::string(word)] += n;
        total += n;
    }

    void merge(const WordTable& other) {
        for (const auto& [word, n] : other.counts) counts[word] += n;
        total += other.total;
    }

    std::uint64_t count(std::string_view word) const {
        const auto it = counts.find(std::string(word));
        return it == counts.end() ? 0 : it->second;
    }

    friend bool operator==(const WordTable& a, const WordTable& b) {
        return a.total == b.total && a.counts == b.counts;
    }
};

/// Lowercase, whitespace-split tokens of a message text.
/// Rules: tokens starting with http://, https:// or www. are dropped;
/// leading and trailing characters that are not ASCII letters/digits
/// (multi-byte UTF-8 counts as letters) are stripped; interior characters,
/// apostrophes included, survive, so "don't" stays one word.
WordTable tokenize(std::string_view text);

}  // namespace parksent
