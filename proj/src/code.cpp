#include "exclusion/code.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <numeric>

namespace exclusion {

namespace {

std::size_t primitive_root_length(const std::vector<Symbol>& period) {
    const std::size_t n = period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = period[i] == period[i - d];
        if (ok) return d;
    }
    return n;
}

} // namespace

Code::Code(int alphabet, std::vector<Symbol> preperiod, std::vector<Symbol> period)
    : alphabet_(alphabet), preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw PreconditionError("code period must be nonempty");
    for (Symbol s : preperiod_)
        if (s >= alphabet_) throw PreconditionError("symbol out of range for alphabet");
    for (Symbol s : period_)
        if (s >= alphabet_) throw PreconditionError("symbol out of range for alphabet");
    period_.resize(primitive_root_length(period_));
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
        preperiod_.pop_back();
    }
}

Symbol Code::at(std::size_t i) const {
    if (i < preperiod_.size()) return preperiod_[i];
    return period_[(i - preperiod_.size()) % period_.size()];
}

Word Code::prefix(std::size_t length) const {
    std::vector<Symbol> out(length);
    for (std::size_t i = 0; i < length; ++i) out[i] = at(i);
    return Word(alphabet_, std::move(out));
}

Code Code::shifted(std::size_t k) const {
    if (k <= preperiod_.size())
        return Code(alphabet_, std::vector<Symbol>(preperiod_.begin() + static_cast<std::ptrdiff_t>(k), preperiod_.end()),
                    period_);
    std::size_t r = (k - preperiod_.size()) % period_.size();
    std::vector<Symbol> rotated(period_.begin() + static_cast<std::ptrdiff_t>(r), period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + static_cast<std::ptrdiff_t>(r));
    return Code(alphabet_, {}, std::move(rotated));
}

std::string Code::to_string() const {
    std::string out;
    for (Symbol s : preperiod_) out.push_back(static_cast<char>('0' + s));
    out.push_back('(');
    for (Symbol s : period_) out.push_back(static_cast<char>('0' + s));
    out.push_back(')');
    return out;
}

bool lt_order(const Code& a, const Code& b) {
    if (a.alphabet() != b.alphabet()) throw PreconditionError("lt_order: alphabet mismatch");
    // Past max(preperiod) both streams are periodic with a joint period of lcm.
    const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) +
                                std::lcm(a.period().size(), b.period().size());
    for (std::size_t i = 0; i < horizon; ++i) {
        const Symbol x = a.at(i), y = b.at(i);
        if (x != y) return x < y;
    }
    return false;
}

} // namespace exclusion
