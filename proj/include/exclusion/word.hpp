#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace exclusion {

using Symbol = std::uint8_t;

/// Finite block over the alphabet {0, ..., alphabet-1}.
///
/// Words of a fixed length are also addressed by their base-`alphabet` code
/// with the first symbol most significant, so numeric order on codes is
/// lexicographic order on words.
class Word {
public:
    Word() = default;
    Word(int alphabet, std::vector<Symbol> symbols);

    static Word from_string(std::string_view text, int alphabet);
    static Word from_code(std::uint64_t code, int length, int alphabet);

    int alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }

    std::uint64_t code() const;
    std::string to_string() const;

    /// Symbols [pos, pos+len).
    Word sub(std::size_t pos, std::size_t len) const;
    /// True iff `factor` occurs somewhere in this word.
    bool contains(const Word& factor) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.symbols_ <=> b.symbols_;
    }

private:
    int alphabet_ = 2;
    std::vector<Symbol> symbols_;
};

/// Two-sided block s_{-j} ... s_{-1} . s_0 ... s_{k-1}. `past` is stored in
/// reading order, so past.back() is s_{-1}.
struct TwoSidedWord {
    Word past;
    Word future;
};

/// Decodes the code of a length-`length` word into symbols.
std::vector<Symbol> decode_symbols(std::uint64_t code, int length, int alphabet);

} // namespace exclusion
