#include "exclusion/model.hpp"

#include "exclusion/errors.hpp"
#include "exclusion/hole.hpp"

#include <algorithm>
#include <map>

namespace exclusion {

namespace {

bool overlaps(const Interval& a, const Interval& b) {
    return std::max(a.lo, b.lo) < std::min(a.hi, b.hi);
}

bool boxes_overlap(const Box& a, const Box& b) {
    if (!overlaps(a.x, b.x)) return false;
    if (!a.y || !b.y) return true;
    return overlaps(*a.y, *b.y);
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (!(out.lo < out.hi)) return std::nullopt;
    return out;
}

void check_cap(std::size_t count, const Limits& limits) {
    if (count > limits.max_regions)
        throw ResourceError("survivor region count " + std::to_string(count) + " exceeds cap " +
                            std::to_string(limits.max_regions));
}

// ---- 1D interval lists (sorted, disjoint, positive length) ----

std::vector<Interval> merge_touching(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (Interval& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, iv.hi);
        else out.push_back(std::move(iv));
    }
    return out;
}

std::vector<Interval> intersect_lists(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (auto c = intersect(a[i], b[j])) out.push_back(*c);
        if (a[i].hi < b[j].hi) ++i;
        else ++j;
    }
    return merge_touching(std::move(out));
}

std::vector<Interval> circle_complement(const Hole1D& hole) {
    std::vector<Interval> out;
    Rational cursor(0);
    for (const Interval& p : hole.closure_pieces()) {
        if (cursor < p.lo) out.push_back({cursor, p.lo});
        cursor = std::max(cursor, p.hi);
    }
    if (cursor < 1) out.push_back({cursor, Rational(1)});
    return out;
}

std::vector<Interval> circle_preimage(const std::vector<Interval>& s, int n) {
    std::vector<Interval> out;
    out.reserve(s.size() * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        for (const Interval& iv : s) out.push_back({(iv.lo + j) / n, (iv.hi + j) / n});
    return merge_touching(std::move(out));
}

// ---- 2D box lists (interior-disjoint) ----

void sort_boxes(std::vector<Box>& v) {
    std::sort(v.begin(), v.end(), [](const Box& a, const Box& b) {
        if (a.x.lo != b.x.lo) return a.x.lo < b.x.lo;
        return a.y->lo < b.y->lo;
    });
}

std::vector<Box> square_complement(const Hole2D& hole) {
    std::vector<Rational> xs{Rational(0), Rational(1)}, ys{Rational(0), Rational(1)};
    for (const Rect& r : hole.rects) {
        xs.push_back(r.x.lo);
        xs.push_back(r.x.hi);
        ys.push_back(r.y.lo);
        ys.push_back(r.y.hi);
    }
    auto uniq = [](std::vector<Rational>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(xs);
    uniq(ys);
    std::vector<Box> out;
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        std::optional<Box> run;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const Interval cx{xs[i], xs[i + 1]}, cy{ys[j], ys[j + 1]};
            bool covered = false;
            for (const Rect& r : hole.rects)
                covered = covered || (r.x.lo <= cx.lo && cx.hi <= r.x.hi && r.y.lo <= cy.lo && cy.hi <= r.y.hi);
            if (covered) {
                if (run) out.push_back(*run);
                run.reset();
            } else if (run) {
                run->x.hi = cx.hi;
            } else {
                run = Box{cx, cy};
            }
        }
        if (run) out.push_back(*run);
    }
    sort_boxes(out);
    return out;
}

std::vector<Box> intersect_boxes(const std::vector<Box>& a, const std::vector<Box>& b, const Limits& limits) {
    std::vector<Box> out;
    for (const Box& p : a) {
        for (const Box& q : b) {
            if (!(q.x.lo < p.x.hi)) break;
            auto ix = intersect(p.x, q.x);
            if (!ix) continue;
            auto iy = intersect(*p.y, *q.y);
            if (!iy) continue;
            out.push_back({*ix, *iy});
        }
        check_cap(out.size(), limits);
    }
    sort_boxes(out);
    return out;
}

std::vector<Box> baker_preimage(const std::vector<Box>& s, int n, const Limits& limits) {
    std::vector<Box> out;
    for (const Box& b : s)
        for (int a = 0; a < n; ++a) {
            auto iy = intersect(*b.y, {ratio(a, n), ratio(a + 1, n)});
            if (!iy) continue;
            Rational y0 = iy->lo * n - a, y1 = iy->hi * n - a;
            out.push_back({{(b.x.lo + a) / n, (b.x.hi + a) / n}, Interval{y0, y1}});
        }
    check_cap(out.size(), limits);
    for (Box& b : out) {
        b.x.lo.canonicalize();
        b.x.hi.canonicalize();
    }
    sort_boxes(out);
    return out;
}

std::vector<Box> baker_image(const std::vector<Box>& s, int n, const Limits& limits) {
    std::vector<Box> out;
    for (const Box& b : s)
        for (int a = 0; a < n; ++a) {
            auto ix = intersect(b.x, {ratio(a, n), ratio(a + 1, n)});
            if (!ix) continue;
            Rational x0 = ix->lo * n - a, x1 = ix->hi * n - a;
            out.push_back({Interval{x0, x1}, Interval{(b.y->lo + a) / n, (b.y->hi + a) / n}});
        }
    check_cap(out.size(), limits);
    sort_boxes(out);
    return out;
}

using PointKey = std::pair<Rational, Rational>;

PointKey key_of(const Point& p) { return {p.x, p.y ? *p.y : Rational(-1)}; }

} // namespace

std::string to_string(SystemKind kind) { return kind == SystemKind::Circle ? "circle" : "baker"; }

void SystemSpec::validate() const {
    if (branches < 2 || branches > 10) throw PreconditionError("branches must be in [2, 10]");
}

bool Box::contains(const Point& p) const {
    if (!x.contains(p.x)) return false;
    if (!y) return true;
    return p.y && y->contains(*p.y);
}

bool RegionSet::meets_interior(const Box& b) const {
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& r) { return boxes_overlap(r, b); });
}

void check_point(const SystemSpec& sys, const Point& p) {
    if (p.x < 0 || p.x >= 1) throw PreconditionError("point x must lie in [0, 1)");
    if (sys.is_baker()) {
        if (!p.y) throw PreconditionError("Bakers map points need a y coordinate");
        if (*p.y < 0 || *p.y >= 1) throw PreconditionError("point y must lie in [0, 1)");
    } else if (p.y) {
        throw PreconditionError("circle points have no y coordinate");
    }
}

Point map_step(const SystemSpec& sys, const Point& p) {
    const int n = sys.branches;
    const Rational nx = p.x * n;
    const mpz_class a = floor_of(nx);
    Point out{nx - Rational(a), std::nullopt};
    if (sys.is_baker()) {
        // At x = k/n the right branch is taken, since floor picks k.
        out.y = (*p.y + Rational(a)) / n;
    }
    out.x = frac(out.x);
    return out;
}

Point map_step_inverse(const SystemSpec& sys, const Point& p, int past_symbol) {
    if (!sys.is_baker()) throw PreconditionError("the circle map is not invertible");
    const int n = sys.branches;
    if (past_symbol < 0 || past_symbol >= n) throw PreconditionError("past symbol out of range");
    if (!p.y) throw PreconditionError("Bakers map points need a y coordinate");
    const Rational y = *p.y * n - past_symbol;
    if (y < 0 || y >= 1) throw PreconditionError("y coordinate is not in the image of the chosen branch");
    return Point{(p.x + past_symbol) / n, y};
}

Point map_step_back(const SystemSpec& sys, const Point& p) {
    const mpz_class a = floor_of(*p.y * sys.branches);
    return map_step_inverse(sys, p, static_cast<int>(a.get_si()));
}

OrbitSummary orbit_summary(const SystemSpec& sys, const Point& p, std::size_t max_steps) {
    check_point(sys, p);
    std::map<PointKey, std::size_t> seen;
    OrbitSummary out;
    Point cur = p;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        auto [it, inserted] = seen.emplace(key_of(cur), out.states.size());
        if (!inserted) {
            out.preperiod = it->second;
            out.period = out.states.size() - it->second;
            return out;
        }
        out.states.push_back(cur);
        cur = map_step(sys, cur);
    }
    throw ResourceError("orbit did not recur within " + std::to_string(max_steps) + " steps");
}

Box cylinder_box(const SystemSpec& sys, const TwoSidedWord& w) {
    const int n = sys.branches;
    Rational v(0), scale(1);
    for (Symbol s : w.future.symbols()) {
        scale /= n;
        v += scale * s;
    }
    Box box{{v, v + scale}, std::nullopt};
    if (!sys.is_baker()) {
        if (!w.past.empty()) throw PreconditionError("circle cylinders have no past symbols");
        return box;
    }
    Rational u(0), yscale(1);
    const auto& past = w.past.symbols();
    for (auto it = past.rbegin(); it != past.rend(); ++it) {
        yscale /= n;
        u += yscale * *it;
    }
    box.y = Interval{u, u + yscale};
    return box;
}

Box cylinder_box(const SystemSpec& sys, const Word& future) {
    return cylinder_box(sys, TwoSidedWord{Word(future.alphabet(), {}), future});
}

std::set<Word> codes_of_point(const SystemSpec& sys, const Point& p, int length) {
    check_point(sys, p);
    const int n = sys.branches;
    // State value in [0, 1]; 1 is the left limit of 0 and codes as (n-1)^inf.
    struct Branch {
        Rational v;
        std::vector<Symbol> symbols;
    };
    std::vector<Branch> active{{p.x, {}}};
    for (int step = 0; step < length; ++step) {
        std::vector<Branch> next;
        for (Branch& b : active) {
            const Rational nv = b.v * n;
            const mpz_class k = floor_of(nv);
            const bool on_grid = nv.get_den() == 1;
            auto push = [&](int symbol, Rational image) {
                Branch c{std::move(image), b.symbols};
                c.symbols.push_back(static_cast<Symbol>(symbol));
                next.push_back(std::move(c));
            };
            if (b.v == 0) {
                push(0, Rational(0));
            } else if (b.v == 1) {
                push(n - 1, Rational(1));
            } else if (on_grid) {
                const int ki = static_cast<int>(k.get_si());
                push(ki, Rational(0));
                push(ki - 1, Rational(1));
            } else {
                push(static_cast<int>(k.get_si()), nv - Rational(k));
            }
        }
        active = std::move(next);
    }
    std::set<Word> out;
    for (Branch& b : active) out.insert(Word(n, std::move(b.symbols)));
    return out;
}

RegionSet survivor_regions(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits) {
    if (depth < 0) throw PreconditionError("survivor depth must be >= 0");
    sys.validate();
    hole.check_fits(sys);
    RegionSet out;
    if (!sys.is_baker()) {
        const std::vector<Interval> avoid = circle_complement(hole.as_1d());
        std::vector<Interval> s = avoid;
        for (int k = 0; k < depth && !s.empty(); ++k) {
            s = intersect_lists(avoid, circle_preimage(s, sys.branches));
            check_cap(s.size(), limits);
        }
        for (Interval& iv : s) out.boxes.push_back({std::move(iv), std::nullopt});
        return out;
    }
    const std::vector<Box> avoid = square_complement(hole.as_2d());
    std::vector<Box> fwd = avoid, bwd = avoid;
    for (int k = 0; k < depth; ++k) {
        fwd = intersect_boxes(avoid, baker_preimage(fwd, sys.branches, limits), limits);
        bwd = intersect_boxes(avoid, baker_image(bwd, sys.branches, limits), limits);
    }
    out.boxes = intersect_boxes(fwd, bwd, limits);
    return out;
}

} // namespace exclusion
