#include "exclusion/beta.hpp"

#include "exclusion/brackets.hpp"
#include "exclusion/errors.hpp"

#include <algorithm>

namespace exclusion {

namespace {

/// Follower automaton of the beta-shift: state j means the last j symbols
/// agree with the expansion since the last strictly smaller symbol.
struct Follower {
    std::vector<Symbol> digits; // preperiod followed by one period
    std::size_t preperiod = 0;
    std::vector<bool> live;

    explicit Follower(const Code& c) : preperiod(c.preperiod().size()) {
        digits = c.preperiod();
        digits.insert(digits.end(), c.period().begin(), c.period().end());
        // The tail from j is all zeros exactly when j lies in a zero period.
        const bool zero_period = std::all_of(c.period().begin(), c.period().end(), [](Symbol s) { return s == 0; });
        live.assign(digits.size(), true);
        if (zero_period) {
            for (std::size_t j = digits.size(); j-- > 0;) {
                if (j >= preperiod) live[j] = false;
                else if (digits[j] == 0 && !live[j + 1 < digits.size() ? j + 1 : preperiod]) live[j] = false;
                else break;
            }
        }
    }

    std::size_t next_index(std::size_t j) const { return j + 1 < digits.size() ? j + 1 : preperiod; }

    /// Next state, or nullopt for a dead transition.
    std::optional<std::size_t> step(std::size_t j, Symbol a) const {
        if (a < digits[j]) return std::size_t{0};
        if (a > digits[j]) return std::nullopt;
        const std::size_t k = next_index(j);
        if (!live[k]) return std::nullopt;
        return k;
    }
};

} // namespace

std::string to_string(BetaTag tag) {
    switch (tag) {
    case BetaTag::FiniteType: return "FiniteType";
    case BetaTag::Sofic: return "Sofic";
    case BetaTag::NotSoficWithinHorizon: return "NotSoficWithinHorizon";
    }
    return "?";
}

void BetaThreshold::validate() const {
    if (branches < 2 || branches > 10) throw PreconditionError("branches must be in [2, 10]");
    if (t <= 0 || t >= 1) throw PreconditionError("threshold must lie strictly between 0 and 1");
}

BetaNumberCheck is_beta_number(const BetaThreshold& bt) {
    bt.validate();
    const auto orbit = orbit_summary(SystemSpec::circle(bt.branches), {bt.t, std::nullopt});
    const std::size_t span = orbit.preperiod + orbit.period;
    for (std::size_t k = 1; k <= span; ++k) {
        const Point& s = k < span ? orbit.states[k] : orbit.states[orbit.preperiod];
        if (s.x >= bt.t) return {false, k};
    }
    return {true, std::nullopt};
}

Code beta_expansion(const BetaThreshold& bt) {
    bt.validate();
    const auto orbit = orbit_summary(SystemSpec::circle(bt.branches), {bt.t, std::nullopt});
    std::vector<Symbol> digits;
    for (const Point& p : orbit.states)
        digits.push_back(static_cast<Symbol>(floor_of(p.x * bt.branches).get_si()));
    const auto pre = static_cast<std::ptrdiff_t>(orbit.preperiod);
    return Code(bt.branches, {digits.begin(), digits.begin() + pre}, {digits.begin() + pre, digits.end()});
}

Word beta_code(const BetaThreshold& bt, int length) {
    if (length < 0) throw PreconditionError("length must be >= 0");
    if (!is_beta_number(bt).is_beta) throw PreconditionError("threshold is not a beta-number");
    return beta_expansion(bt).prefix(static_cast<std::size_t>(length));
}

BetaClass classify_beta_threshold(const BetaThreshold& bt) {
    if (!is_beta_number(bt).is_beta) throw PreconditionError("threshold is not a beta-number");
    BetaClass c{BetaTag::Sofic, beta_expansion(bt)};
    if (is_base_adic(bt.t, static_cast<unsigned long>(bt.branches))) c.tag = BetaTag::FiniteType;
    return c;
}

std::vector<Word> beta_language(const BetaThreshold& bt, int length) {
    if (length < 0) throw PreconditionError("length must be >= 0");
    if (!is_beta_number(bt).is_beta) throw PreconditionError("threshold is not a beta-number");
    const Follower fa(beta_expansion(bt));
    const int n = bt.branches;
    std::vector<Word> out;
    std::vector<Symbol> word;
    // Depth-first in symbol order, so the output is sorted.
    auto rec = [&](auto&& self, std::size_t state) -> void {
        if (static_cast<int>(word.size()) == length) {
            out.emplace_back(n, word);
            return;
        }
        for (int a = 0; a < n; ++a) {
            const auto next = fa.step(state, static_cast<Symbol>(a));
            if (!next) continue;
            word.push_back(static_cast<Symbol>(a));
            self(self, *next);
            word.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::pair<SystemSpec, Hole> beta_res_hole(const BetaThreshold& bt) {
    bt.validate();
    Rect strip{{bt.t, Rational(1)}, {Rational(0), Rational(1)}, true};
    return {SystemSpec::baker(bt.branches), Hole(normalize_hole(std::vector<Rect>{strip}, false))};
}

BetaVerification verify_beta_res(const BetaThreshold& bt, int max_length, int survivor_depth, const Limits& limits) {
    if (max_length < 1) throw PreconditionError("max_length must be >= 1");
    BetaVerification rep;
    rep.max_length = max_length;
    rep.survivor_depth = std::max(survivor_depth, max_length);
    const auto [sys, hole] = beta_res_hole(bt);
    const auto oracle = oracle_languages(sys, hole, max_length, rep.survivor_depth, limits);
    for (int L = 1; L <= max_length && rep.equal; ++L) {
        const auto& orc = oracle[static_cast<std::size_t>(L - 1)];
        const auto lang = beta_language(bt, L);
        if (orc == lang) continue;
        rep.equal = false;
        rep.first_bad_length = L;
        std::vector<Word> diff;
        std::set_symmetric_difference(orc.begin(), orc.end(), lang.begin(), lang.end(), std::back_inserter(diff));
        rep.counterexample = diff.front();
        rep.counterexample_in_oracle = std::binary_search(orc.begin(), orc.end(), diff.front());
    }
    return rep;
}

} // namespace exclusion
