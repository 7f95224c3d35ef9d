#include "doctest.h"
#include "oracles.hpp"

#include "exclusion/brackets.hpp"
#include "exclusion/errors.hpp"

#include <algorithm>
#include <random>

using namespace exclusion;

namespace {

Rational q(long p, long d) { return ratio(p, d); }

Word w2(const char* s) { return Word::from_string(s, 2); }

const SystemSpec C2 = SystemSpec::circle(2);

std::vector<Word> forbidden_of(const Sft& s) { return s.forbidden_words(); }

bool subset(const std::vector<Word>& a, const std::vector<Word>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Hole random_hole_1d(std::mt19937& rng, int max_arcs, int depth) {
    const long N = 1L << depth;
    std::vector<Arc> arcs;
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_arcs));
    for (int i = 0; i < k; ++i) {
        const long a = static_cast<long>(rng() % static_cast<unsigned long>(N));
        const long len = 1 + static_cast<long>(rng() % static_cast<unsigned long>(N / 3 + 1));
        const long b = a + len;
        arcs.push_back({q(a, N), b >= N ? q(b - N, N) : q(b, N)});
        if (arcs.back().hi == 0) arcs.back().hi = 1;
    }
    return Hole(normalize_hole(arcs, false));
}

} // namespace

TEST_CASE("inner and outer brackets on reference holes") {
    const Hole gm = make_hole_1d({{q(3, 4), Rational(1)}});
    CHECK(forbidden_of(inner_sft(C2, gm, 2)) == std::vector<Word>{w2("11")});
    CHECK(forbidden_of(outer_sft(C2, gm, 2)) == std::vector<Word>{w2("11")});

    const Hole two = make_hole_1d({{q(1, 4), q(3, 4)}});
    CHECK(forbidden_of(inner_sft(C2, two, 2)) == std::vector<Word>{w2("01"), w2("10")});
    CHECK(forbidden_of(outer_sft(C2, two, 2)) == std::vector<Word>{w2("01"), w2("10")});

    const Hole mid = make_hole_1d({{q(5, 16), q(11, 16)}});
    CHECK(forbidden_of(outer_sft(C2, mid, 1)).empty());
    CHECK(inner_sft(C2, Hole(Hole1D{}), 3).vertex_count() == 8);
}

TEST_CASE("bracket reports carry entropies") {
    const auto gm = bracket_report(C2, make_hole_1d({{q(3, 4), Rational(1)}}), 2);
    CHECK(*gm.inner_entropy == doctest::Approx(0.481212).epsilon(1e-6));
    CHECK(*gm.outer_entropy == doctest::Approx(0.481212).epsilon(1e-6));
    const auto two = bracket_report(C2, make_hole_1d({{q(1, 4), q(3, 4)}}), 2);
    CHECK(*two.inner_entropy == doctest::Approx(0.0));
    CHECK(*two.outer_entropy == doctest::Approx(0.0));
    const auto none = bracket_report(C2, Hole(Hole1D{}), 3);
    CHECK(*none.inner_entropy == doctest::Approx(std::log(2.0)));
}

TEST_CASE("stabilization certificates") {
    const auto gm = certify_stabilization(C2, make_hole_1d({{q(3, 4), Rational(1)}}), 8);
    REQUIRE(gm);
    CHECK(gm->depth == 2);
    CHECK(forbidden_of(gm->sft) == std::vector<Word>{w2("11")});
    const auto two = certify_stabilization(C2, make_hole_1d({{q(1, 4), q(3, 4)}}), 8);
    REQUIRE(two);
    CHECK(two->depth == 2);
    CHECK(sft_components(two->sft).size() == 2);
    CHECK_FALSE(certify_stabilization(C2, make_hole_1d({{q(5, 6), Rational(1)}}), 12));
}

TEST_CASE("escape criterion") {
    const Hole mid = make_hole_1d({{q(5, 16), q(11, 16)}});
    const auto e = certify_escape(C2, mid, 8);
    REQUIRE(e.certificate);
    REQUIRE(e.witnesses.size() == 2);
    CHECK(e.witnesses[0].time == 1);
    CHECK(e.witnesses[1].time == 1);
    CHECK(revalidate(C2, mid, *e.certificate));

    const auto gm = certify_escape(C2, make_hole_1d({{q(3, 4), Rational(1)}}), 8);
    CHECK_FALSE(gm.certificate);
    CHECK(gm.reason.find("never enters") != std::string::npos);

    const auto b2 = SystemSpec::baker(2);
    const Hole strip(normalize_hole(std::vector<Rect>{Rect{{q(3, 4), Rational(1)}, {Rational(0), Rational(1)}, true}},
                                    false));
    CHECK_FALSE(certify_escape(b2, strip, 8).certificate);
    const auto stab = certify_stabilization(b2, strip, 6);
    REQUIRE(stab);
    CHECK(stab->depth == 2);
}

TEST_CASE("escape certificates imply stabilization within the bound") {
    std::mt19937 rng(31);
    int certified = 0;
    for (int t = 0; t < 60; ++t) {
        const Hole h = random_hole_1d(rng, 3, 6);
        const auto e = certify_escape(C2, h, 10);
        if (!e.certificate) continue;
        ++certified;
        CHECK(revalidate(C2, h, *e.certificate));
        CHECK(e.certificate->depth <= e.stabilization_bound);
    }
    CHECK(certified > 0);
}

TEST_CASE("2D escape on an interior rectangle") {
    const auto b2 = SystemSpec::baker(2);
    // Corners and edges all enter this rectangle quickly.
    const Hole rect(normalize_hole(
        std::vector<Rect>{Rect{{q(5, 16), q(11, 16)}, {q(5, 16), q(11, 16)}, false}}, false));
    const auto e = certify_escape(b2, rect, 8);
    if (e.certificate) {
        CHECK(revalidate(b2, rect, *e.certificate));
        for (const auto& w : e.witnesses) CHECK(std::abs(w.time) <= 8);
    } else {
        CHECK_FALSE(e.reason.empty());
    }
}

TEST_CASE("oracle language examples") {
    CHECK(oracle_language(C2, make_hole_1d({{q(3, 4), Rational(1)}}), 3) ==
          std::vector<Word>{w2("000"), w2("001"), w2("010"), w2("100"), w2("101")});
    CHECK(oracle_language(C2, Hole(Hole1D{}), 2).size() == 4);
    CHECK(oracle_language(C2, make_hole_1d({{Rational(0), Rational(1)}}), 1).empty());
}

TEST_CASE("squeeze: inner within oracle within outer") {
    std::mt19937 rng(41);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const auto sys = SystemSpec::circle(n);
        const Hole h = random_hole_1d(rng, 3, 5);
        for (int depth = 1; depth <= 5; ++depth) {
            const auto in = inner_sft(sys, h, depth);
            const auto out = outer_sft(sys, h, depth);
            // Survivors this deep rule out dead ends of the outer graph.
            const int D = depth - 1 + static_cast<int>(out.peel_rounds());
            const auto deep = oracle_languages(sys, h, depth, std::max(D, depth));
            for (int L = 1; L <= depth; ++L) {
                CHECK(subset(sft_language(in, L), oracle_language(sys, h, L)));
                CHECK(subset(sft_language(in, L), deep[static_cast<std::size_t>(L - 1)]));
                CHECK(subset(deep[static_cast<std::size_t>(L - 1)], sft_language(out, L)));
            }
        }
    }
}

TEST_CASE("shallow survivor sets overshoot the outer bracket") {
    // Points of cylinder 10 survive two steps but none survives for ever.
    const Hole h = make_hole_1d({{q(7, 32), q(17, 32)}});
    const auto shallow = oracle_language(C2, h, 2);
    CHECK(std::binary_search(shallow.begin(), shallow.end(), w2("10")));
    const auto out = sft_language(outer_sft(C2, h, 5), 2);
    CHECK_FALSE(std::binary_search(out.begin(), out.end(), w2("10")));
    const auto deep = oracle_language(C2, h, 2, 12);
    CHECK_FALSE(std::binary_search(deep.begin(), deep.end(), w2("10")));
}

TEST_CASE("bracket monotonicity in depth") {
    std::mt19937 rng(47);
    for (int t = 0; t < 20; ++t) {
        const Hole h = random_hole_1d(rng, 3, 5);
        for (int depth = 1; depth < 6; ++depth) {
            for (int L = 1; L <= depth; ++L) {
                CHECK(subset(sft_language(inner_sft(C2, h, depth), L), sft_language(inner_sft(C2, h, depth + 1), L)));
                CHECK(subset(sft_language(outer_sft(C2, h, depth + 1), L), sft_language(outer_sft(C2, h, depth), L)));
            }
        }
    }
}

TEST_CASE("stabilization soundness against the oracle") {
    std::mt19937 rng(53);
    int certified = 0;
    for (int t = 0; t < 40; ++t) {
        const Hole h = random_hole_1d(rng, 2, 4);
        const auto cert = certify_stabilization(C2, h, 6);
        if (!cert) continue;
        ++certified;
        CHECK(revalidate(C2, h, *cert));
        for (int L = 1; L <= cert->depth + 6; ++L) CHECK(sft_language(cert->sft, L) == oracle_language(C2, h, L));
    }
    CHECK(certified > 5);
}

TEST_CASE("hole_from_sft round trip") {
    const auto [sys, hole] = hole_from_sft(sft_build(2, 2, {w2("11")}, Sidedness::OneSided));
    CHECK(sys == C2);
    REQUIRE(hole.as_1d().arcs.size() == 1);
    CHECK(hole.as_1d().arcs[0] == Arc{q(3, 4), Rational(1)});
    CHECK(hole_from_sft(sft_build(2, 2, {w2("00")}, Sidedness::OneSided)).second.as_1d().arcs[0] ==
          Arc{Rational(0), q(1, 4)});
    CHECK(hole_from_sft(Sft::full(2, 2, Sidedness::OneSided)).second.empty());

    std::mt19937 rng(59);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int m = 1 + static_cast<int>(rng() % 2);
        std::vector<Word> forb;
        for (std::uint64_t c = 0; c < oracle::pow_u(n, m); ++c)
            if (rng() % 3 == 0) forb.push_back(Word::from_code(c, m, n));
        const bool two = rng() % 2;
        const Sft s = sft_build(n, m, forb, two ? Sidedness::TwoSided : Sidedness::OneSided);
        const auto [sy, h] = hole_from_sft(s);
        const auto cert = certify_stabilization(sy, h, m + 2);
        REQUIRE(cert);
        CHECK(sft_equivalent(cert->sft, s));
    }
}

TEST_CASE("serial and parallel kill masks agree") {
    std::mt19937 rng(61);
    for (int t = 0; t < 8; ++t) {
        const bool baker = t % 2;
        const auto sys = baker ? SystemSpec::baker(2) : SystemSpec::circle(3);
        Hole h = baker ? Hole(normalize_hole(std::vector<Rect>{Rect{{q(1, 8), q(3, 8)}, {q(1, 4), q(5, 8)}, false},
                                                               Rect{{q(3, 8), q(7, 8)}, {q(1, 4), q(1, 2)}, false}},
                                             false))
                       : random_hole_1d(rng, 3, 6);
        const int depth = baker ? 5 : 7;
        const auto s = kill_masks(sys, h, depth, {}, kernels::Exec::Serial);
        const auto p = kill_masks(sys, h, depth, {}, kernels::Exec::Parallel);
        CHECK(s.inner_killed == p.inner_killed);
        CHECK(s.outer_killed == p.outer_killed);
        CHECK(brackets_agree(sys, h, depth, {}, kernels::Exec::Serial) ==
              brackets_agree(sys, h, depth, {}, kernels::Exec::Parallel));
    }
}

TEST_CASE("resource caps are explicit") {
    Limits tiny;
    tiny.max_vertex_space = 64;
    CHECK_THROWS_AS(inner_sft(C2, Hole(Hole1D{}), 7, tiny), ResourceError);
    CHECK_THROWS_AS(inner_sft(C2, Hole(Hole1D{}), 0), PreconditionError);
}
