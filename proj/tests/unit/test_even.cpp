#include "doctest.h"
#include "oracles.hpp"

#include "exclusion/even.hpp"
#include "exclusion/errors.hpp"

#include <random>
#include <regex>

using namespace exclusion;

namespace {

/// A finite word occurs in the even shift iff it has no factor 0 1^odd 0.
bool even_word(const std::string& s) {
    static const std::regex odd_run("01(11)*0");
    return !std::regex_search(s, odd_run);
}

Rational half_minus(unsigned e) { return ratio(1, 2) - ratio(1, mpz_class(1) << e); }

/// Floor-branch binary digits of x under repeated doubling.
std::string doubling_digits(Rational x, int len) {
    std::string out;
    for (int i = 0; i < len; ++i) {
        x *= 2;
        if (x >= 1) { out += '1'; x -= 1; }
        else out += '0';
    }
    return out;
}

/// Forward and backward Bakers orbits, far enough that the remaining points
/// sit within 2^-100 of a corner of the square.
bool baker_orbit_avoids(const Point& p, const Hole2D& hole) {
    const SystemSpec sys = SystemSpec::baker(2);
    Point f = p, b = p;
    for (int i = 0; i < 160; ++i) {
        if (hole.contains(f) || hole.contains(b)) return false;
        f = map_step(sys, f);
        b = map_step_back(sys, b);
    }
    return true;
}

Rational dyadic(std::mt19937_64& rng, int depth) {
    return ratio(static_cast<long>(rng() % ((1u << depth) + 1)), 1L << depth);
}

Hole1D random_hole_1d(std::mt19937_64& rng, int intervals, bool closed) {
    std::vector<Rational> cuts;
    while (cuts.size() < static_cast<std::size_t>(2 * intervals)) {
        Rational c = dyadic(rng, 7);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Arc> arcs;
    for (int i = 0; i < intervals; ++i) arcs.push_back({cuts[2 * i], cuts[2 * i + 1]});
    return normalize_hole(std::move(arcs), closed);
}

Rect random_rect(std::mt19937_64& rng, bool full_height) {
    for (;;) {
        Rational a = dyadic(rng, 4), b = dyadic(rng, 4), c = dyadic(rng, 4), d = dyadic(rng, 4);
        if (a == b || c == d) continue;
        Rect r{{std::min(a, b), std::max(a, b)}, {std::min(c, d), std::max(c, d)}, full_height};
        return r;
    }
}

} // namespace

TEST_CASE("even language matches the forbidden-run oracle") {
    for (int L = 0; L <= 12; ++L) {
        std::set<std::string> expected;
        for (std::uint64_t c = 0; c < oracle::pow_u(2, L); ++c) {
            std::string s;
            for (int d : oracle::digits(c, L, 2)) s += static_cast<char>('0' + d);
            if (even_word(s)) expected.insert(s);
        }
        std::set<std::string> got;
        for (const Word& w : even_language(L)) got.insert(w.to_string());
        CHECK(got == expected);
    }
    CHECK(even_language(1).size() == 2);
    CHECK(even_language(3).size() == 7);
    CHECK(even_language(4).size() == 12);
    const auto l3 = even_language(3);
    CHECK(std::find(l3.begin(), l3.end(), Word::from_string("010", 2)) == l3.end());
    CHECK(std::find(l3.begin(), l3.end(), Word::from_string("101", 2)) != l3.end());
}

TEST_CASE("even shift membership of eventually periodic streams") {
    CHECK(in_even_shift(Code(2, {1, 1, 1}, {0})));      // leading run is free
    CHECK_FALSE(in_even_shift(Code(2, {0, 1, 0}, {0})));
    CHECK(in_even_shift(Code(2, {0}, {1})));
    CHECK(in_even_shift(Code(2, {}, {0, 1, 1})));
    CHECK_FALSE(in_even_shift(Code(2, {}, {0, 1})));
    // Two-sided: past 1 0^inf joins the future's leading run.
    CHECK_FALSE(in_even_shift(Code(2, {1}, {0}), Code(2, {1, 1}, {0})));
    CHECK(in_even_shift(Code(2, {1}, {0}), Code(2, {1}, {0})));
    CHECK(in_even_shift(Code(2, {}, {1}), Code(2, {1}, {0})));
}

TEST_CASE("stream values") {
    CHECK(stream_value(Code(2, {0, 1}, {0})) == ratio(1, 4));
    CHECK(stream_value(Code(2, {}, {1})) == 1);
    CHECK(stream_value(Code(3, {}, {1})) == ratio(1, 2));
    CHECK(stream_value(Code(2, {1}, {0, 1})) == ratio(2, 3));
}

TEST_CASE("x_n and y_n interleave") {
    for (unsigned n = 1; n < 20; ++n) {
        const Rational x_prev = half_minus(2 * n);
        const Rational y = half_minus(2 * n + 1);
        const Rational x = half_minus(2 * n + 2);
        CHECK(x_prev < y);
        CHECK(y < x);
        CHECK(doubling_digits(x, 2 * n + 6) == "0" + std::string(2 * n + 1, '1') + "0000");
    }
}

TEST_CASE("interval witnesses on the listed holes") {
    SUBCASE("x_0 on the boundary of an open hole") {
        const Witness w = ies_even_witness(make_hole_1d({{ratio(1, 4), ratio(5, 16)}}));
        CHECK(w.kind == WitnessKind::MustBeInHole);
        CHECK(w.candidate == 0);
        REQUIRE(w.points.size() == 1);
        CHECK(w.points[0].point.x == ratio(1, 4));
    }
    SUBCASE("empty hole") {
        const Witness w = ies_even_witness(Hole1D{});
        CHECK(w.kind == WitnessKind::MustBeInHole);
        CHECK(w.candidate == 0);
        CHECK(w.candidate_bound == 1);
    }
    SUBCASE("hole (3/10, 49/100) misses x_0 = 1/4") {
        const Witness w = ies_even_witness(make_hole_1d({{ratio(3, 10), ratio(49, 100)}}));
        CHECK(w.kind == WitnessKind::MustBeInHole);
        CHECK(w.points[0].point.x == ratio(1, 4));
    }
    SUBCASE("hole covering x_0 and y_1") {
        const Hole1D h = make_hole_1d({{ratio(1, 5), ratio(49, 100)}});
        const Witness w = ies_even_witness(h);
        CHECK(w.kind == WitnessKind::MustBeOutsideHole);
        CHECK(w.candidate == 1);
        CHECK(w.points[0].point.x == ratio(3, 8));
        CHECK_FALSE(revalidate_witness(SystemSpec::circle(2), Hole(h), w).has_value());
    }
    SUBCASE("hole containing 0") {
        const Witness w = ies_even_witness(make_hole_1d({{ratio(7, 8), ratio(1, 8)}}));
        CHECK(w.kind == WitnessKind::MustBeOutsideHole);
        CHECK(w.points[0].point.x == 0);
    }
}

TEST_CASE("interval witnesses on a random corpus") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        const int p = 1 + static_cast<int>(rng() % 5);
        const bool closed = t % 3 == 0;
        const Hole1D h = random_hole_1d(rng, p, closed);
        const Witness w = ies_even_witness(h);
        CHECK(w.candidate <= h.interval_count() + 1);
        CHECK_FALSE(revalidate_witness(SystemSpec::circle(2), Hole(h), w).has_value());
        for (const WitnessPoint& wp : w.points) {
            CHECK(doubling_digits(wp.point.x, 30) == wp.future.prefix(30).to_string());
            const bool in = h.contains(wp.point.x);
            if (w.kind == WitnessKind::MustBeOutsideHole) {
                CHECK(in);
                CHECK(even_word(wp.future.prefix(40).to_string()));
            } else {
                CHECK_FALSE(in);
                CHECK_FALSE(even_word(wp.future.prefix(40).to_string()));
                CHECK(even_word(wp.future.prefix(40).to_string().substr(1)));
            }
        }
    }
}

TEST_CASE("rectangle witness on the empty hole") {
    const Witness w = res_even_witness(SystemSpec::baker(2), Hole2D{});
    CHECK(w.kind == WitnessKind::CornerPigeonhole);
    CHECK(w.candidate == 0);
    REQUIRE(w.points.size() == 1);
    CHECK(w.points[0].point == Point{ratio(1, 2), Rational(0)});
    CHECK(w.facts.back().kind == FactKind::OrbitAvoidsHole);
    CHECK_FALSE(revalidate_witness(SystemSpec::baker(2), Hole(Hole2D{}), w).has_value());
}

TEST_CASE("closed rectangles force a corner and an edge slot before closing") {
    const Hole2D h = normalize_hole(std::vector<Rect>{{{ratio(3, 4), ratio(7, 8)}, {ratio(1, 2), ratio(5, 8)}, false},
                                                      {{Rational(0), ratio(1, 16)}, {ratio(1, 2), ratio(9, 16)}, false}},
                                    true);
    const Witness w = res_even_witness(SystemSpec::baker(2), h);
    CHECK(w.kind == WitnessKind::CornerPigeonhole);
    CHECK(w.candidate == 2);
    CHECK(w.candidate_bound == 3);
    bool corner = false;
    for (const WitnessFact& f : w.facts)
        if (f.kind == FactKind::LowerLeftCorner) {
            corner = true;
            CHECK(w.points[f.point].point == Point{ratio(3, 4), ratio(1, 2)});
        }
    CHECK(corner);
    CHECK(w.facts.back().kind == FactKind::OrbitAvoidsHole);
    CHECK(baker_orbit_avoids(w.points[w.facts.back().point].point, h));
    CHECK_FALSE(revalidate_witness(SystemSpec::baker(2), Hole(h), w).has_value());
}

TEST_CASE("rectangle witnesses on random single and double rectangles") {
    std::mt19937_64 rng(77);
    int checked = 0;
    while (checked < 150) {
        const int count = 1 + checked % 2;
        std::vector<Rect> rects;
        for (int i = 0; i < count; ++i) rects.push_back(random_rect(rng, rng() % 4 == 0));
        const bool closed = rng() % 2 == 0;
        Hole2D h;
        try {
            h = normalize_hole(rects, closed);
        } catch (const PreconditionError&) {
            continue;
        }
        ++checked;
        const Witness w = res_even_witness(SystemSpec::baker(2), h);
        CHECK(w.kind == WitnessKind::CornerPigeonhole);
        CHECK(w.candidate <= w.candidate_bound);
        CHECK(w.candidate_bound <= h.corner_count());
        CHECK_FALSE(revalidate_witness(SystemSpec::baker(2), Hole(h), w).has_value());
        const WitnessFact& last = w.facts.back();
        const WitnessPoint& wp = w.points[last.point];
        if (last.kind == FactKind::OrbitAvoidsHole) {
            CHECK(baker_orbit_avoids(wp.point, h));
        } else {
            CHECK(h.contains(wp.point));
            std::string past = wp.past->prefix(24).to_string();
            std::reverse(past.begin(), past.end());
            CHECK(even_word(past + wp.future.prefix(24).to_string()));
        }
    }
}

TEST_CASE("revalidation rejects tampered witnesses") {
    const Hole1D h = make_hole_1d({{ratio(1, 5), ratio(49, 100)}});
    Witness w = ies_even_witness(h);
    Witness moved = w;
    moved.points[0].point.x = ratio(2, 5);
    CHECK(revalidate_witness(SystemSpec::circle(2), Hole(h), moved).has_value());
    Witness wrong_hole = w;
    CHECK(revalidate_witness(SystemSpec::circle(2), Hole(make_hole_1d({{ratio(1, 2), ratio(3, 4)}})), wrong_hole)
              .has_value());
    Witness no_facts = w;
    no_facts.facts.clear();
    CHECK(revalidate_witness(SystemSpec::circle(2), Hole(h), no_facts).has_value());
    CHECK_THROWS_AS(res_even_witness(SystemSpec::baker(3), Hole2D{}), PreconditionError);
}
