#pragma once

#include "exclusion/model.hpp"

#include <string>
#include <variant>
#include <vector>

namespace exclusion {

/// Circle arc from `lo` counter-clockwise to `hi`. Wraps through 0 when hi < lo.
struct Arc {
    Rational lo, hi;

    bool wraps() const { return hi < lo; }
    /// Closed pieces inside [0, 1]; two pieces when the arc wraps.
    std::vector<Interval> pieces() const;
    bool contains(const Rational& x, bool closed) const;
    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of arcs with pairwise disjoint closures (after normalize).
/// Open by default; `closed` is honored only by point-membership tests.
struct Hole1D {
    std::vector<Arc> arcs;
    bool closed = false;

    std::size_t interval_count() const noexcept { return arcs.size(); }
    bool contains(const Rational& x) const;
    /// Closed pieces of the hole closure, sorted.
    std::vector<Interval> closure_pieces() const;
};

/// Axis-parallel rectangle. A full-height rectangle spans y in [0, 1]
/// including both horizontal edges.
struct Rect {
    Interval x;
    Interval y{Rational(0), Rational(1)};
    bool full_height = false;

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct Hole2D {
    std::vector<Rect> rects;
    bool closed = false;

    std::size_t corner_count() const noexcept { return 4 * rects.size(); }
    bool contains(const Point& p) const;
};

class Hole {
public:
    Hole() : data_(Hole1D{}) {}
    Hole(Hole1D h) : data_(std::move(h)) {}
    Hole(Hole2D h) : data_(std::move(h)) {}

    bool is_1d() const noexcept { return std::holds_alternative<Hole1D>(data_); }
    const Hole1D& as_1d() const { return std::get<Hole1D>(data_); }
    const Hole2D& as_2d() const { return std::get<Hole2D>(data_); }
    bool empty() const;
    bool contains(const Point& p) const;

    /// Throws PreconditionError when the hole does not fit the system.
    void check_fits(const SystemSpec& sys) const;

private:
    std::variant<Hole1D, Hole2D> data_;
};

/// Sorts arcs and merges arcs whose closures overlap or touch (the result is
/// the interior of the union of closures). Merges are reported in `warnings`.
Hole1D normalize_hole(std::vector<Arc> arcs, bool closed, std::vector<std::string>* warnings = nullptr);

/// Validates bounds and interior-disjointness of rectangles.
Hole2D normalize_hole(std::vector<Rect> rects, bool closed, std::vector<std::string>* warnings = nullptr);

/// Convenience: open 1D hole from (lo, hi) pairs.
Hole1D make_hole_1d(std::initializer_list<std::pair<Rational, Rational>> arcs);

} // namespace exclusion
