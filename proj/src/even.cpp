#include "exclusion/even.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace exclusion {

namespace {

using Symbols = std::vector<Symbol>;

Symbols ones(std::size_t k) { return Symbols(k, 1); }

Symbols cat(std::initializer_list<Symbols> parts) {
    Symbols out;
    for (const Symbols& s : parts) out.insert(out.end(), s.begin(), s.end());
    return out;
}

Code finite_code(Symbols s) { return Code(2, std::move(s), {0}); }

/// Runs of ones with a zero on both sides, within a finite window.
bool window_runs_even(const Symbols& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != 1) { ++i; continue; }
        std::size_t j = i;
        while (j < s.size() && s[j] == 1) ++j;
        const bool bounded = i > 0 && j < s.size();
        if (bounded && (j - i) % 2 == 1) return false;
        i = j;
    }
    return true;
}

Symbols long_prefix(const Code& c) {
    return c.prefix(c.preperiod().size() + 3 * c.period().size()).symbols();
}

/// Two-sided finite-support sequence 0^inf w 0^inf with the reading position
/// at offset d (s_0 = w[d]).
struct OrbitPoint {
    long offset;
    Point point;
    Code past;
    Code future;
};

OrbitPoint place(const Symbols& w, long d) {
    const long len = static_cast<long>(w.size());
    auto at = [&](long i) -> Symbol { return (i >= 0 && i < len) ? w[static_cast<std::size_t>(i)] : Symbol{0}; };
    Symbols fut, pst;
    for (long i = d; i < std::max(d, len); ++i) fut.push_back(at(i));
    for (long i = d - 1; i >= std::min(d, 0L); --i) pst.push_back(at(i));
    Code f = finite_code(fut);
    Code p = finite_code(pst);
    return {d, Point{stream_value(f), stream_value(p)}, p, f};
}

/// Least positive coordinate of the rectangles along one axis.
Rational least_positive(const Hole2D& hole, bool along_x) {
    Rational m(1);
    for (const Rect& r : hole.rects) {
        const Interval& iv = along_x ? r.x : r.y;
        for (const Rational* v : {&iv.lo, &iv.hi})
            if (*v > 0 && *v < m) m = *v;
    }
    return m;
}

/// Every orbit point of 0^inf w 0^inf whose hole membership can differ from a
/// later one. Beyond the returned range the orbit creeps along an edge of the
/// square inside an interval free of rectangle coordinates.
std::vector<OrbitPoint> relevant_orbit(const Symbols& w, const Hole2D& hole) {
    const long len = static_cast<long>(w.size());
    const Rational mx = least_positive(hole, true);
    const Rational my = least_positive(hole, false);
    std::vector<OrbitPoint> out;
    for (long d = 0;; --d) {
        out.push_back(place(w, d));
        if (out.back().point.x < mx) break;
    }
    std::reverse(out.begin(), out.end());
    for (long d = 1; d < len; ++d) out.push_back(place(w, d));
    for (long d = len;; ++d) {
        out.push_back(place(w, d));
        if (*out.back().point.y < my) break;
    }
    return out;
}

Symbols finite_support(const WitnessPoint& wp) {
    if (!wp.past || wp.past->period() != Symbols{0} || wp.future.period() != Symbols{0})
        throw PreconditionError("orbit check needs a finitely supported code");
    Symbols w = wp.past->preperiod();
    std::reverse(w.begin(), w.end());
    w.insert(w.end(), wp.future.preperiod().begin(), wp.future.preperiod().end());
    return w;
}

bool orbit_avoids(const WitnessPoint& wp, const Hole2D& hole) {
    const Symbols w = finite_support(wp);
    if (w.empty()) return !hole.contains(Point{Rational(0), Rational(0)});
    for (const OrbitPoint& op : relevant_orbit(w, hole))
        if (hole.contains(op.point)) return false;
    return true;
}

class Builder {
public:
    std::size_t add(std::string label, Code future, std::optional<Code> past = std::nullopt) {
        Point p{stream_value(future), std::nullopt};
        if (past) p.y = stream_value(*past);
        w.points.push_back({std::move(label), std::move(p), std::move(future), std::move(past)});
        return w.points.size() - 1;
    }
    std::size_t add(std::string label, const OrbitPoint& op) {
        w.points.push_back({std::move(label), op.point, op.future, op.past});
        return w.points.size() - 1;
    }
    void fact(FactKind k, std::size_t point, std::optional<std::size_t> rect = std::nullopt) {
        w.facts.push_back({k, point, rect});
    }
    Witness w;
};

void require_binary(const SystemSpec& sys) {
    sys.validate();
    if (sys.branches != 2) throw PreconditionError("even-shift witnesses are built for the two-branch maps");
}

std::string idx(const char* name, std::size_t n) { return std::string(name) + "_" + std::to_string(n); }

} // namespace

std::string to_string(WitnessKind kind) {
    switch (kind) {
    case WitnessKind::MustBeInHole: return "MustBeInHole";
    case WitnessKind::MustBeOutsideHole: return "MustBeOutsideHole";
    case WitnessKind::CornerPigeonhole: return "CornerPigeonhole";
    }
    return "?";
}

std::string to_string(FactKind kind) {
    switch (kind) {
    case FactKind::InHole: return "InHole";
    case FactKind::NotInHole: return "NotInHole";
    case FactKind::EvenMember: return "EvenMember";
    case FactKind::NotEvenMember: return "NotEvenMember";
    case FactKind::TailEvenMember: return "TailEvenMember";
    case FactKind::OrbitAvoidsHole: return "OrbitAvoidsHole";
    case FactKind::LowerLeftCorner: return "LowerLeftCorner";
    }
    return "?";
}

std::vector<Word> even_language(int length) {
    if (length < 0) throw PreconditionError("length must be nonnegative");
    if (length > 24) throw ResourceError("even_language length above 24");
    // States: 0 = even number of ones since the last zero (or free start),
    // 1 = odd. Edges 0-0->0, 0-1->1, 1-1->0. Every state extends forever.
    std::vector<Word> out;
    const std::uint64_t total = std::uint64_t{1} << length;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Symbols s = decode_symbols(c, length, 2);
        bool ok = false;
        for (int start = 0; start < 2 && !ok; ++start) {
            int q = start;
            bool alive = true;
            for (Symbol a : s) {
                if (a == 0) {
                    if (q == 1) { alive = false; break; }
                } else {
                    q ^= 1;
                }
            }
            ok = alive;
        }
        if (ok) out.emplace_back(2, s);
    }
    return out;
}

Rational stream_value(const Code& c) {
    const mpz_class n = c.alphabet();
    mpz_class a = 0, b = 0;
    for (Symbol s : c.preperiod()) a = a * n + s;
    for (Symbol s : c.period()) b = b * n + s;
    mpz_class na, nb;
    mpz_pow_ui(na.get_mpz_t(), n.get_mpz_t(), c.preperiod().size());
    mpz_pow_ui(nb.get_mpz_t(), n.get_mpz_t(), c.period().size());
    return ratio(a * (nb - 1) + b, na * (nb - 1));
}

bool in_even_shift(const Code& future) {
    if (future.alphabet() != 2) return false;
    return window_runs_even(long_prefix(future));
}

bool in_even_shift(const Code& past, const Code& future) {
    if (past.alphabet() != 2 || future.alphabet() != 2) return false;
    Symbols s = long_prefix(past);
    std::reverse(s.begin(), s.end());
    const Symbols f = long_prefix(future);
    s.insert(s.end(), f.begin(), f.end());
    return window_runs_even(s);
}

Witness ies_even_witness(const Hole1D& hole) {
    Builder b;
    const std::size_t bound = hole.interval_count() + 1;
    b.w.candidate_bound = bound;
    for (std::size_t n = 0; n <= bound; ++n) {
        b.w.candidate = n;
        // y_n and every point of its orbit carry even-shift codes.
        const Code yn = finite_code(cat({{0}, ones(2 * n)}));
        for (std::size_t k = 0; k <= 2 * n + 1; ++k) {
            const Code c = yn.shifted(k);
            if (hole.contains(stream_value(c))) {
                const std::size_t i = b.add(k == 0 ? idx("y", n) : "f^" + std::to_string(k) + "(" + idx("y", n) + ")", c);
                b.fact(FactKind::EvenMember, i);
                b.fact(FactKind::InHole, i);
                b.w.kind = WitnessKind::MustBeOutsideHole;
                return b.w;
            }
        }
        const Code xn = finite_code(cat({{0}, ones(2 * n + 1)}));
        for (std::size_t k = 1; k <= 2 * n + 2; ++k) {
            const Code c = xn.shifted(k);
            if (hole.contains(stream_value(c))) {
                const std::size_t i = b.add("f^" + std::to_string(k) + "(" + idx("x", n) + ")", c);
                b.fact(FactKind::EvenMember, i);
                b.fact(FactKind::InHole, i);
                b.w.kind = WitnessKind::MustBeOutsideHole;
                return b.w;
            }
        }
        if (!hole.contains(stream_value(xn))) {
            const std::size_t i = b.add(idx("x", n), xn);
            b.fact(FactKind::NotEvenMember, i);
            b.fact(FactKind::TailEvenMember, i);
            b.fact(FactKind::NotInHole, i);
            b.w.kind = WitnessKind::MustBeInHole;
            return b.w;
        }
    }
    throw std::logic_error("ies_even_witness: no obligation failed within the pigeonhole bound");
}

Witness res_even_witness(const SystemSpec& sys, const Hole2D& hole) {
    require_binary(sys);
    if (!sys.is_baker()) throw PreconditionError("res_even_witness needs the Bakers map");

    // Slots a candidate can use up: one lower-left corner per rectangle, and
    // one trace interval per rectangle meeting the bottom or left edge.
    std::size_t slots = hole.rects.size();
    for (const Rect& r : hole.rects) {
        if (r.full_height || (hole.closed && r.y.lo == 0)) ++slots;
        if (hole.closed && r.x.lo == 0) ++slots;
    }

    Builder b;
    b.w.kind = WitnessKind::CornerPigeonhole;
    b.w.candidate_bound = slots;

    auto close_outside = [&](std::string label, const Code& past, const Code& future) {
        const std::size_t i = b.add(std::move(label), future, past);
        b.fact(FactKind::EvenMember, i);
        b.fact(FactKind::InHole, i);
        return b.w;
    };

    for (std::size_t n = 0; n <= slots; ++n) {
        b.w.candidate = n;
        const Symbols w = ones(2 * n + 1);
        const std::vector<OrbitPoint> orbit = relevant_orbit(w, hole);
        const OrbitPoint* middle = nullptr;
        const OrbitPoint* edge = nullptr;
        for (const OrbitPoint& op : orbit) {
            if (!hole.contains(op.point)) continue;
            const bool on_edge = op.offset <= 0 || op.offset >= static_cast<long>(w.size());
            if (on_edge) { if (!edge) edge = &op; }
            else if (!middle) middle = &op;
        }

        if (!middle && !edge) {
            const std::size_t i = b.add(idx("x", n), finite_code(w), finite_code({}));
            b.fact(FactKind::NotEvenMember, i);
            b.fact(FactKind::OrbitAvoidsHole, i);
            return b.w;
        }

        if (middle) {
            // a = 0^inf 1^p . 1^{q+1} 0^inf with p + q = 2n.
            const std::size_t p = static_cast<std::size_t>(middle->offset);
            const std::size_t q = 2 * n - p;
            const Point& a = middle->point;
            Rational gap_y = *a.y, gap_x = a.x;
            for (const Rect& r : hole.rects) {
                for (const Rational* v : {&r.y.lo, &r.y.hi})
                    if (*v < *a.y) gap_y = std::min(gap_y, Rational(*a.y - *v));
                for (const Rational* v : {&r.x.lo, &r.x.hi})
                    if (*v < a.x) gap_x = std::min(gap_x, Rational(a.x - *v));
            }
            // u_i = 0^inf 1^{2i} 0 1^{p-1} . 1^{q+1} 0^inf approaches a from below.
            for (std::size_t i = 0;; ++i) {
                const Code past = finite_code(cat({ones(p - 1), {0}, ones(2 * i)}));
                const Code fut = finite_code(ones(q + 1));
                if (hole.contains(Point{stream_value(fut), stream_value(past)}))
                    return close_outside(idx("u", i) + "(" + idx("x", n) + ")", past, fut);
                if (*a.y - stream_value(past) < gap_y) break;
            }
            // v_i = 0^inf 1^p . 1^q 0 1^{2i} 0^inf approaches a from the left.
            for (std::size_t i = 0;; ++i) {
                const Code past = finite_code(ones(p));
                const Code fut = finite_code(cat({ones(q), {0}, ones(2 * i)}));
                if (hole.contains(Point{stream_value(fut), stream_value(past)}))
                    return close_outside(idx("v", i) + "(" + idx("x", n) + ")", past, fut);
                if (a.x - stream_value(fut) < gap_x) break;
            }
            std::optional<std::size_t> corner;
            for (std::size_t r = 0; r < hole.rects.size(); ++r)
                if (hole.rects[r].x.lo == a.x && hole.rects[r].y.lo == *a.y && !hole.rects[r].full_height) corner = r;
            if (!corner) throw std::logic_error("res_even_witness: entry point is not a lower-left corner");
            const std::size_t i = b.add("a(" + idx("x", n) + ")", *middle);
            b.fact(FactKind::NotEvenMember, i);
            b.fact(FactKind::InHole, i);
            b.fact(FactKind::LowerLeftCorner, i, corner);
            continue;
        }

        // Entry on an edge of the square: 0^k 1^{2n+1} is flanked by the even
        // points 0^k 1^{2n} and 0^k 1^{2n+2} on the same edge.
        const bool bottom = edge->offset <= 0;
        const std::size_t k = static_cast<std::size_t>(bottom ? -edge->offset : edge->offset - static_cast<long>(w.size()));
        const std::size_t entry = b.add("e(" + idx("x", n) + ")", *edge);
        b.fact(FactKind::NotEvenMember, entry);
        b.fact(FactKind::InHole, entry);
        for (std::size_t m : {2 * n, 2 * n + 2}) {
            Symbols flank = cat({Symbols(k, 0), ones(m)});
            Code along = finite_code(flank);
            Code zero = finite_code({});
            const Code& past = bottom ? zero : along;
            const Code& fut = bottom ? along : zero;
            const std::string label = "flank" + std::to_string(m) + "(" + idx("x", n) + ")";
            if (hole.contains(Point{stream_value(fut), stream_value(past)})) return close_outside(label, past, fut);
            const std::size_t i = b.add(label, fut, past);
            b.fact(FactKind::EvenMember, i);
            b.fact(FactKind::NotInHole, i);
        }
    }
    throw std::logic_error("res_even_witness: no contradiction within the pigeonhole bound");
}

Witness even_witness(const SystemSpec& sys, const Hole& hole) {
    require_binary(sys);
    hole.check_fits(sys);
    return sys.is_baker() ? res_even_witness(sys, hole.as_2d()) : ies_even_witness(hole.as_1d());
}

std::optional<std::string> revalidate_witness(const SystemSpec& sys, const Hole& hole, const Witness& w) {
    require_binary(sys);
    hole.check_fits(sys);
    const bool two_sided = sys.is_baker();
    for (const WitnessPoint& p : w.points) {
        if (p.past.has_value() != two_sided) return p.label + ": code shape does not match the system";
        if (stream_value(p.future) != p.point.x) return p.label + ": x does not match its code";
        if (two_sided && (!p.point.y || stream_value(*p.past) != *p.point.y))
            return p.label + ": y does not match its code";
    }
    auto even = [&](const WitnessPoint& p) { return two_sided ? in_even_shift(*p.past, p.future) : in_even_shift(p.future); };

    bool closed_contradiction = false;
    std::vector<std::vector<FactKind>> per_point(w.points.size());
    for (const WitnessFact& f : w.facts) {
        if (f.point >= w.points.size()) return "fact refers to a missing point";
        const WitnessPoint& p = w.points[f.point];
        bool ok = false;
        switch (f.kind) {
        case FactKind::InHole: ok = hole.contains(p.point); break;
        case FactKind::NotInHole: ok = !hole.contains(p.point); break;
        case FactKind::EvenMember: ok = even(p); break;
        case FactKind::NotEvenMember: ok = !even(p); break;
        case FactKind::TailEvenMember: ok = !two_sided && in_even_shift(p.future.shifted(1)); break;
        case FactKind::OrbitAvoidsHole: ok = two_sided && orbit_avoids(p, hole.as_2d()); break;
        case FactKind::LowerLeftCorner: {
            if (!two_sided || !f.rect || *f.rect >= hole.as_2d().rects.size()) break;
            const Rect& r = hole.as_2d().rects[*f.rect];
            ok = !r.full_height && r.x.lo == p.point.x && r.y.lo == *p.point.y;
            break;
        }
        }
        if (!ok) return p.label + ": fact " + to_string(f.kind) + " does not hold";
        per_point[f.point].push_back(f.kind);
    }
    auto has = [&](std::size_t i, FactKind k) {
        return std::find(per_point[i].begin(), per_point[i].end(), k) != per_point[i].end();
    };
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        if (has(i, FactKind::EvenMember) && has(i, FactKind::InHole)) closed_contradiction = true;
        if (has(i, FactKind::NotEvenMember) && has(i, FactKind::TailEvenMember) && has(i, FactKind::NotInHole))
            closed_contradiction = true;
        if (has(i, FactKind::NotEvenMember) && has(i, FactKind::OrbitAvoidsHole)) closed_contradiction = true;
    }
    if (!closed_contradiction) return std::string("facts do not close a contradiction");
    if (w.candidate > w.candidate_bound) return std::string("candidate index exceeds the pigeonhole bound");
    return std::nullopt;
}

} // namespace exclusion
