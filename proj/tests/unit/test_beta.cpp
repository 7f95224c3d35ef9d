#include "doctest.h"
#include "oracles.hpp"

#include "exclusion/beta.hpp"
#include "exclusion/brackets.hpp"
#include "exclusion/errors.hpp"

#include <algorithm>

using namespace exclusion;

namespace {

BetaThreshold bt(long p, long q, int n = 2) { return {ratio(p, q), n}; }

/// Lexicographic definition: w belongs iff every shift of w 0^inf is below
/// the expansion of t.
std::vector<Word> lexicographic_language(const BetaThreshold& b, int L) {
    const Code beta = beta_expansion(b);
    std::vector<Word> out;
    const std::uint64_t count = oracle::pow_u(b.branches, L);
    for (std::uint64_t c = 0; c < count; ++c) {
        const Word w = Word::from_code(c, L, b.branches);
        bool ok = true;
        for (int k = 0; k < L && ok; ++k) {
            std::vector<Symbol> pre(w.symbols().begin() + k, w.symbols().end());
            ok = lt_order(Code(b.branches, pre, {0}), beta);
        }
        if (ok) out.push_back(w);
    }
    return out;
}

} // namespace

TEST_CASE("beta-number recognition") {
    CHECK(is_beta_number(bt(3, 4)).is_beta);
    CHECK(is_beta_number(bt(5, 6)).is_beta);
    const auto bad = is_beta_number(bt(2, 3));
    CHECK_FALSE(bad.is_beta);
    CHECK(bad.failure_index == std::optional<std::size_t>{2});
    CHECK_THROWS_AS(is_beta_number(bt(1, 1)), PreconditionError);
}

TEST_CASE("classification and codes") {
    CHECK(classify_beta_threshold(bt(3, 4)).tag == BetaTag::FiniteType);
    CHECK(classify_beta_threshold(bt(5, 6)).tag == BetaTag::Sofic);
    CHECK(classify_beta_threshold(bt(13, 16)).tag == BetaTag::FiniteType);
    CHECK_THROWS_AS(classify_beta_threshold(bt(2, 3)), PreconditionError);
    CHECK(beta_code(bt(3, 4), 4).to_string() == "1100");
    CHECK(beta_code(bt(5, 6), 5).to_string() == "11010");
    CHECK(beta_code(bt(1, 2), 3).to_string() == "100");
}

TEST_CASE("expansion dominates its shifts") {
    for (const auto& b : {bt(3, 4), bt(5, 6), bt(13, 16), bt(27, 32), bt(7, 9, 3), bt(4, 5, 3)}) {
        if (!is_beta_number(b).is_beta) continue;
        const Code e = beta_expansion(b);
        const std::size_t span = e.preperiod().size() + e.period().size();
        for (std::size_t k = 1; k <= span; ++k) CHECK(lt_order(e.shifted(k), e));
    }
}

TEST_CASE("follower automaton agrees with the lexicographic definition") {
    CHECK(beta_language(bt(3, 4), 3).size() == 5);
    for (const auto& b : {bt(3, 4), bt(5, 6), bt(13, 16), bt(27, 32), bt(1, 2), bt(7, 8), bt(4, 5, 3), bt(2, 3, 3)}) {
        if (!is_beta_number(b).is_beta) continue;
        for (int L = 1; L <= 8; ++L) CHECK(beta_language(b, L) == lexicographic_language(b, L));
    }
}

TEST_CASE("beta languages grow with the threshold") {
    const std::vector<BetaThreshold> ts{bt(1, 2), bt(3, 4), bt(13, 16), bt(5, 6), bt(7, 8)};
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        for (int L = 1; L <= 8; ++L) {
            const auto a = beta_language(ts[i], L), b = beta_language(ts[i + 1], L);
            CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
}

TEST_CASE("strip holes realise the beta-shift") {
    const auto [sys, hole] = beta_res_hole(bt(3, 4));
    CHECK(sys.is_baker());
    CHECK(hole.as_2d().rects.size() == 1);
    CHECK(hole.as_2d().rects[0].full_height);
    for (const auto& b : {bt(3, 4), bt(5, 6), bt(13, 16), bt(27, 32)}) {
        const auto rep = verify_beta_res(b, 8, 8);
        CHECK(rep.equal);
    }
    // Only the fixed point 0 survives the half strip.
    const auto half = verify_beta_res(bt(1, 2), 5, 5);
    CHECK(half.equal);
    CHECK(beta_language(bt(1, 2), 4).size() == 1);
}

TEST_CASE("finite-type thresholds stabilize, sofic ones do not") {
    for (const auto& b : {bt(3, 4), bt(13, 16)}) {
        const auto c = classify_beta_threshold(b);
        const int len = static_cast<int>(c.expansion.preperiod().size());
        const auto [sys, hole] = beta_res_hole(b);
        const auto cert = certify_stabilization(sys, hole, len + 2);
        REQUIRE(cert);
        CHECK(cert->depth <= len + 2);
    }
}
