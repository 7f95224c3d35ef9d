#pragma once

#include "exclusion/limits.hpp"
#include "exclusion/rational.hpp"
#include "exclusion/word.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace exclusion {

enum class SystemKind { Circle, Baker };

/// x -> n x mod 1 on the circle, or the n-branch Bakers map on the unit square.
struct SystemSpec {
    SystemKind kind = SystemKind::Circle;
    int branches = 2;

    static SystemSpec circle(int n = 2) { return {SystemKind::Circle, n}; }
    static SystemSpec baker(int n = 2) { return {SystemKind::Baker, n}; }
    bool is_baker() const noexcept { return kind == SystemKind::Baker; }
    void validate() const;
    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

struct Point {
    Rational x;
    std::optional<Rational> y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Closed rational interval [lo, hi].
struct Interval {
    Rational lo, hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed box; `y` is absent for circle regions.
struct Box {
    Interval x;
    std::optional<Interval> y;

    bool contains(const Point& p) const;
    friend bool operator==(const Box&, const Box&) = default;
};

/// Pairwise interior-disjoint boxes in canonical (sorted) order.
struct RegionSet {
    std::vector<Box> boxes;

    bool empty() const noexcept { return boxes.empty(); }
    /// Positive-measure overlap with `b`.
    bool meets_interior(const Box& b) const;
};

struct OrbitSummary {
    std::size_t preperiod = 0;
    std::size_t period = 1;
    std::vector<Point> states; ///< preperiod + period states, in visiting order
};

class Hole;

Point map_step(const SystemSpec& sys, const Point& p);

/// Inverse Baker branch selected by `past_symbol`; throws for the circle map.
Point map_step_inverse(const SystemSpec& sys, const Point& p, int past_symbol);

/// Inverse Baker step using the branch encoded in the y coordinate.
Point map_step_back(const SystemSpec& sys, const Point& p);

/// Exact preperiod/period. Circle orbits always recur; Baker orbits recur only
/// for periodic codings, so `max_steps` bounds the search there.
OrbitSummary orbit_summary(const SystemSpec& sys, const Point& p, std::size_t max_steps = 1'000'000);

Box cylinder_box(const SystemSpec& sys, const TwoSidedWord& w);
Box cylinder_box(const SystemSpec& sys, const Word& future);

/// Length-L forward itineraries of p (x coordinate for the Bakers map). A
/// boundary hit n-adic point contributes both its codings.
std::set<Word> codes_of_point(const SystemSpec& sys, const Point& p, int length);

/// Closure of {p : f^k(p) avoids the hole closure, 0 <= k <= depth}
/// (Bakers map: -depth <= k <= depth).
RegionSet survivor_regions(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {});

/// Validates that p has the right shape for sys and lies in the unit cell.
void check_point(const SystemSpec& sys, const Point& p);

std::string to_string(SystemKind kind);

} // namespace exclusion
