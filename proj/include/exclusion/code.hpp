#pragma once

#include "exclusion/word.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace exclusion {

/// Eventually periodic symbol stream: preperiod followed by period repeated
/// forever. Always held in canonical form (primitive period, shortest
/// preperiod), so structural equality is stream equality.
class Code {
public:
    Code(int alphabet, std::vector<Symbol> preperiod, std::vector<Symbol> period);

    int alphabet() const noexcept { return alphabet_; }
    const std::vector<Symbol>& preperiod() const noexcept { return preperiod_; }
    const std::vector<Symbol>& period() const noexcept { return period_; }

    Symbol at(std::size_t i) const;
    Word prefix(std::size_t length) const;
    /// The stream with its first k symbols dropped.
    Code shifted(std::size_t k) const;

    /// e.g. "110(10)" for 110 followed by 10 repeated.
    std::string to_string() const;

    friend bool operator==(const Code&, const Code&) = default;

private:
    int alphabet_;
    std::vector<Symbol> preperiod_;
    std::vector<Symbol> period_;
};

/// a < b in the order that compares streams at their first differing index,
/// symbol-wise. Throws PreconditionError on alphabet mismatch.
bool lt_order(const Code& a, const Code& b);

} // namespace exclusion
