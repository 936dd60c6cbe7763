#include "parksent/wordtable.hpp"

#include <cctype>

namespace parksent {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Bytes >= 0x80 belong to multi-byte UTF-8 sequences; treat them as word
// characters rather than slicing codepoints apart.
bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

bool is_url(std::string_view token) {
    return token.substr(0, 7) == "http://" || token.substr(0, 8) == "https://" ||
           token.substr(0, 4) == "www.";
}

}  // namespace

WordTable tokenize(std::string_view text) {
    WordTable table;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_ascii_space(text[i])) ++i;
        std::size_t start = i;
        while (i < n && !is_ascii_space(text[i])) ++i;
        if (i == start) continue;

        std::string token;
        token.reserve(i - start);
        for (std::size_t k = start; k < i; ++k) {
            char c = text[k];
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            token.push_back(c);
        }
        if (is_url(token)) continue;

        std::size_t lo = 0, hi = token.size();
        while (lo < hi && !is_word_char(static_cast<unsigned char>(token[lo]))) ++lo;
        while (hi > lo && !is_word_char(static_cast<unsigned char>(token[hi - 1]))) --hi;
        if (lo == hi) continue;

        table.add(std::string_view(token).substr(lo, hi - lo));
    }
    return table;
}

}  // namespace parksent
