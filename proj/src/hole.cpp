#include "exclusion/hole.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>

namespace exclusion {

std::vector<Interval> Arc::pieces() const {
    if (!wraps()) return {{lo, hi}};
    return {{Rational(0), hi}, {lo, Rational(1)}};
}

bool Arc::contains(const Rational& x, bool closed) const {
    // x is taken modulo 1; 1 and 0 are the same circle point.
    const Rational v = frac(x);
    auto inside = [&](const Interval& piece) {
        if (closed) return piece.lo <= v && v <= piece.hi;
        return piece.lo < v && v < piece.hi;
    };
    if (!wraps()) {
        if (inside({lo, hi})) return true;
        // hi == 1 reaches the point 0 only when closed.
        return closed && hi == 1 && v == 0;
    }
    if (closed) return v >= lo || v <= hi;
    return v > lo || v < hi;
}

bool Hole1D::contains(const Rational& x) const {
    return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.contains(x, closed); });
}

std::vector<Interval> Hole1D::closure_pieces() const {
    std::vector<Interval> out;
    for (const Arc& a : arcs)
        for (const Interval& p : a.pieces()) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    return out;
}

bool Hole2D::contains(const Point& p) const {
    if (!p.y) return false;
    const Rational& x = p.x;
    const Rational& y = *p.y;
    for (const Rect& r : rects) {
        const bool in_x = closed ? (r.x.lo <= x && x <= r.x.hi) : (r.x.lo < x && x < r.x.hi);
        bool in_y;
        if (r.full_height) in_y = true;
        else in_y = closed ? (r.y.lo <= y && y <= r.y.hi) : (r.y.lo < y && y < r.y.hi);
        if (in_x && in_y) return true;
    }
    return false;
}

bool Hole::empty() const {
    return is_1d() ? as_1d().arcs.empty() : as_2d().rects.empty();
}

bool Hole::contains(const Point& p) const {
    return is_1d() ? as_1d().contains(p.x) : as_2d().contains(p);
}

void Hole::check_fits(const SystemSpec& sys) const {
    if (sys.is_baker() == is_1d())
        throw PreconditionError(sys.is_baker() ? "the Bakers map needs a rectangle hole"
                                               : "the circle map needs an interval hole");
}

Hole1D normalize_hole(std::vector<Arc> arcs, bool closed, std::vector<std::string>* warnings) {
    std::vector<Interval> pieces;
    for (const Arc& a : arcs) {
        if (a.lo < 0 || a.lo > 1 || a.hi < 0 || a.hi > 1)
            throw PreconditionError("hole endpoints must lie in [0, 1]");
        if (a.lo == a.hi) throw PreconditionError("hole interval is empty");
        Arc c = a;
        if (c.lo == 1) c.lo = 0;
        if (c.hi == 0) c.hi = 1;
        for (const Interval& p : c.pieces()) pieces.push_back(p);
    }
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& p : pieces) {
        if (!merged.empty() && p.lo <= merged.back().hi) {
            if (warnings)
                warnings->push_back("hole intervals [" + to_fraction_string(merged.back().lo) + ", " +
                                    to_fraction_string(merged.back().hi) + "] and [" + to_fraction_string(p.lo) +
                                    ", " + to_fraction_string(p.hi) + "] overlap or touch; merged");
            merged.back().hi = std::max(merged.back().hi, p.hi);
        } else {
            merged.push_back(p);
        }
    }
    Hole1D out;
    out.closed = closed;
    const std::size_t input_count = arcs.size();
    if (merged.size() >= 2 && merged.front().lo == 0 && merged.back().hi == 1) {
        // Closures touch through the point 0 = 1: one arc wrapping around.
        out.arcs.push_back({merged.back().lo, merged.front().hi});
        for (std::size_t i = 1; i + 1 < merged.size(); ++i) out.arcs.push_back({merged[i].lo, merged[i].hi});
        std::sort(out.arcs.begin(), out.arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    } else {
        for (const Interval& p : merged) out.arcs.push_back({p.lo, p.hi});
    }
    if (warnings && out.arcs.size() < input_count && out.arcs.size() + 1 == merged.size())
        warnings->push_back("hole intervals touching at 0 = 1 merged into one wrapping interval");
    return out;
}

Hole2D normalize_hole(std::vector<Rect> rects, bool closed, std::vector<std::string>* warnings) {
    (void)warnings;
    for (Rect& r : rects) {
        if (r.full_height) r.y = {Rational(0), Rational(1)};
        for (const Interval* iv : {&r.x, &r.y}) {
            if (iv->lo < 0 || iv->hi > 1) throw PreconditionError("rectangle coordinates must lie in [0, 1]");
            if (!(iv->lo < iv->hi)) throw PreconditionError("rectangle is degenerate");
        }
    }
    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            const Rect& a = rects[i];
            const Rect& b = rects[j];
            const bool ox = std::max(a.x.lo, b.x.lo) < std::min(a.x.hi, b.x.hi);
            const bool oy = std::max(a.y.lo, b.y.lo) < std::min(a.y.hi, b.y.hi);
            if (ox && oy) throw PreconditionError("hole rectangles must have disjoint interiors");
        }
    std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) {
        if (a.x.lo != b.x.lo) return a.x.lo < b.x.lo;
        return a.y.lo < b.y.lo;
    });
    return Hole2D{std::move(rects), closed};
}

Hole1D make_hole_1d(std::initializer_list<std::pair<Rational, Rational>> arcs) {
    std::vector<Arc> v;
    for (const auto& [lo, hi] : arcs) v.push_back({lo, hi});
    return normalize_hole(std::move(v), false);
}

} // namespace exclusion
