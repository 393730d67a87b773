// Words over a finite alphabet {0,...,A-1}: the basic combinatorial object
// everything else in this library consumes.  Words are stored as plain
// symbol vectors; the empty word is a valid word.

#pragma once

#include <cstdint>
#include <cstddef>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftlab {

using Symbol = std::uint8_t;

constexpr int kMaxAlphabet = 32;  // trie child bitmaps are 32-bit

struct Word {
    std::vector<Symbol> symbols;

    Word() = default;
    explicit Word(std::vector<Symbol> s) : symbols(std::move(s)) {}

    static Word from_string(const std::string& digits);
    std::string to_string() const;

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }

    Symbol front() const { return symbols.front(); }
    Symbol back() const { return symbols.back(); }

    void push_back(Symbol a) { symbols.push_back(a); }
    void pop_back() { symbols.pop_back(); }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word& o) const
    {
        return symbols <=> o.symbols;  // lexicographic with length tie-break
    }

    // w_{[i,j]}, 1-based inclusive indices as in standard subword notation.
    Word subword(std::size_t i, std::size_t j) const;

    Word concat(const Word& o) const;

    // True if every symbol is < alphabet_size.
    bool fits_alphabet(int alphabet_size) const;
};

inline Word Word::from_string(const std::string& digits)
{
    std::vector<Symbol> s;
    s.reserve(digits.size());
    for (char c : digits) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
        else throw std::invalid_argument("word digit out of range: " + std::string(1, c));
        if (v >= kMaxAlphabet) throw std::invalid_argument("symbol value too large");
        s.push_back(static_cast<Symbol>(v));
    }
    return Word(std::move(s));
}

inline std::string Word::to_string() const
{
    std::string out;
    out.reserve(symbols.size());
    for (Symbol a : symbols)
        out.push_back(a < 10 ? static_cast<char>('0' + a) : static_cast<char>('a' + (a - 10)));
    return out;
}

inline Word Word::subword(std::size_t i, std::size_t j) const
{
    if (i < 1 || i > j || j > symbols.size())
        throw std::invalid_argument("subword indices out of range");
    return Word(std::vector<Symbol>(symbols.begin() + (i - 1), symbols.begin() + j));
}

inline Word Word::concat(const Word& o) const
{
    std::vector<Symbol> s = symbols;
    s.insert(s.end(), o.symbols.begin(), o.symbols.end());
    return Word(std::move(s));
}

inline bool Word::fits_alphabet(int alphabet_size) const
{
    for (Symbol a : symbols)
        if (a >= alphabet_size) return false;
    return true;
}

// Lexicographic pre-order on words of possibly different length: compare the
// first min(|v|,|w|) symbols only.  If one word is a prefix of the other the
// two compare as equal (0).  Returns -1 / 0 / +1.
inline int lex_compare_prefix(const Word& v, const Word& w)
{
    const std::size_t n = std::min(v.size(), w.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < w[i]) return -1;
        if (v[i] > w[i]) return +1;
    }
    return 0;
}

// Packs a word into 64 bits (bits-per-symbol chosen from the alphabet size).
// Usable for hash-set keys; throws if the word does not fit.
inline std::uint64_t pack_word(const Word& w, int alphabet_size)
{
    int bits = 1;
    while ((1 << bits) < alphabet_size) ++bits;
    if (w.size() * bits > 57) throw std::invalid_argument("word too long to pack");
    std::uint64_t x = 0;
    for (Symbol a : w.symbols) x = (x << bits) | a;
    return x | (static_cast<std::uint64_t>(w.size()) << 58);
}

}  // namespace shiftlab
