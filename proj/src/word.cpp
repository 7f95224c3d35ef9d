#include "exclusion/word.hpp"

#include "exclusion/errors.hpp"
#include "exclusion/rational.hpp"

#include <algorithm>

namespace exclusion {

Word::Word(int alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
    if (alphabet < 2 || alphabet > 10) throw PreconditionError("alphabet size must be in [2, 10]");
    for (Symbol s : symbols_)
        if (s >= alphabet) throw PreconditionError("symbol out of range for alphabet");
}

Word Word::from_string(std::string_view text, int alphabet) {
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9') throw PreconditionError("word symbols must be digits");
        symbols.push_back(static_cast<Symbol>(c - '0'));
    }
    return Word(alphabet, std::move(symbols));
}

std::vector<Symbol> decode_symbols(std::uint64_t code, int length, int alphabet) {
    std::vector<Symbol> symbols(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        symbols[static_cast<std::size_t>(i)] = static_cast<Symbol>(code % alphabet);
        code /= alphabet;
    }
    return symbols;
}

Word Word::from_code(std::uint64_t code, int length, int alphabet) {
    return Word(alphabet, decode_symbols(code, length, alphabet));
}

std::uint64_t Word::code() const {
    // Validates that the code fits.
    (void)ipow64(static_cast<std::uint64_t>(alphabet_), static_cast<unsigned>(symbols_.size()));
    std::uint64_t c = 0;
    for (Symbol s : symbols_) c = c * static_cast<std::uint64_t>(alphabet_) + s;
    return c;
}

std::string Word::to_string() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

Word Word::sub(std::size_t pos, std::size_t len) const {
    return Word(alphabet_, std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                               symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

bool Word::contains(const Word& factor) const {
    if (factor.size() > size()) return false;
    return std::search(symbols_.begin(), symbols_.end(), factor.symbols_.begin(), factor.symbols_.end()) !=
           symbols_.end();
}

} // namespace exclusion
