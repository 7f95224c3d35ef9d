#include "exclusion/brackets.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <functional>

namespace exclusion {

namespace {

using kernels::IndexRange;

IndexRange meets_range(const Interval& iv, const mpz_class& N) {
    const mpz_class lo = floor_of(iv.lo * N), hi = ceil_of(iv.hi * N);
    return {lo.get_si(), hi.get_si()};
}

IndexRange inside_range(const Interval& iv, const mpz_class& N) {
    const mpz_class lo = ceil_of(iv.lo * N), hi = floor_of(iv.hi * N);
    return {lo.get_si(), hi.get_si()};
}

int max_depth_for(const SystemSpec& sys, const Limits& limits) {
    int d = 0;
    const std::uint64_t n = static_cast<std::uint64_t>(sys.branches);
    std::uint64_t space = 1;
    while (true) {
        const std::uint64_t next = space * (sys.is_baker() ? n * n : n);
        if (next > limits.max_vertex_space) return d;
        space = next;
        ++d;
    }
}

Sft masked_sft(const KillMasks& m, const std::vector<std::uint8_t>& killed) {
    std::vector<std::uint8_t> allowed(killed.size());
    for (std::size_t i = 0; i < killed.size(); ++i) allowed[i] = killed[i] ? 0 : 1;
    return Sft(m.alphabet, m.window, m.sided, std::move(allowed));
}

bool masks_agree(const KillMasks& m, kernels::Exec exec) {
    std::vector<std::uint8_t> outer_allowed(m.outer_killed.size()), probe(m.outer_killed.size());
    for (std::size_t i = 0; i < probe.size(); ++i) {
        outer_allowed[i] = m.outer_killed[i] ? 0 : 1;
        probe[i] = (m.inner_killed[i] && !m.outer_killed[i]) ? 1 : 0;
    }
    const auto essential =
        kernels::trim(outer_allowed, nullptr, m.alphabet, m.window, m.sided == Sidedness::TwoSided, exec);
    return !kernels::any_essential(essential, probe, exec);
}

// ---- exact box dynamics for the Bakers map ----

std::optional<Box> step_box_forward(const Box& b, int n) {
    const mpz_class a = floor_of(b.x.lo * n);
    if (b.x.hi > ratio(a + 1, n)) return std::nullopt;
    const Rational shift(a);
    return Box{{b.x.lo * n - shift, b.x.hi * n - shift}, Interval{(b.y->lo + shift) / n, (b.y->hi + shift) / n}};
}

std::optional<Box> step_box_backward(const Box& b, int n) {
    const mpz_class a = floor_of(b.y->lo * n);
    if (b.y->hi > ratio(a + 1, n)) return std::nullopt;
    const Rational shift(a);
    return Box{{(b.x.lo + shift) / n, (b.x.hi + shift) / n}, Interval{b.y->lo * n - shift, b.y->hi * n - shift}};
}

bool box_inside_open_hole(const Box& b, const Hole2D& hole) {
    for (const Rect& r : hole.rects) {
        const bool in_x = r.x.lo < b.x.lo && b.x.hi < r.x.hi;
        const bool in_y = r.full_height || (r.y.lo < b.y->lo && b.y->hi < r.y.hi);
        if (in_x && in_y) return true;
    }
    return false;
}

/// Iterates the box forward or backward; returns the first time the image
/// lies inside the open hole, or 0.
int box_entry_time(const Box& b, const Hole2D& hole, int n, int max_time) {
    std::optional<Box> fwd = b, bwd = b;
    for (int i = 1; i <= max_time; ++i) {
        if (fwd) {
            fwd = step_box_forward(*fwd, n);
            if (fwd && box_inside_open_hole(*fwd, hole)) return i;
        }
        if (bwd) {
            bwd = step_box_backward(*bwd, n);
            if (bwd && box_inside_open_hole(*bwd, hole)) return -i;
        }
        if (!fwd && !bwd) break;
    }
    return 0;
}

std::optional<Box> apply_time(const Box& b, int time, int n) {
    std::optional<Box> cur = b;
    for (int i = 0; cur && i < std::abs(time); ++i) cur = time > 0 ? step_box_forward(*cur, n) : step_box_backward(*cur, n);
    return cur;
}

/// Cylinder indices at resolution N whose closed cell contains [lo, hi]
/// (indices taken on the circle, so 0 and 1 coincide).
std::vector<std::int64_t> cells_containing(const Rational& lo, const Rational& hi, const mpz_class& N) {
    const Rational a = lo * N, b = hi * N;
    const mpz_class k = floor_of(a);
    const std::int64_t size = N.get_si();
    std::vector<std::int64_t> out;
    if (lo == hi) {
        out.push_back(k.get_si() % size);
        if (a.get_den() == 1) out.push_back((k.get_si() - 1 + size) % size);
    } else if (b <= Rational(k + 1)) {
        out.push_back(k.get_si() % size);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Boundary piece of a rectangle hole: a point (lo == hi) or a segment along
/// one axis at a fixed other coordinate.
struct Piece {
    bool vertical = true;
    Rational fixed;
    Rational lo, hi;
};

Point piece_point(const Piece& p) {
    return p.vertical ? Point{p.fixed, p.lo} : Point{p.lo, p.fixed};
}

Box piece_box(const Piece& p) {
    Interval along{p.lo, p.hi}, across{p.fixed, p.fixed};
    return p.vertical ? Box{across, along} : Box{along, across};
}

struct EdgeSearch {
    const Hole2D& hole;
    int n;
    int n_max;
    std::vector<EscapeWitness> witnesses;
    int level = 0;
    std::optional<Piece> failed;

    bool discharge(const Piece& piece, int depth) {
        const mpz_class N = ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(depth));
        const auto across = cells_containing(piece.fixed, piece.fixed, N);
        const auto along = cells_containing(piece.lo, piece.hi, N);
        std::vector<EscapeWitness> found;
        bool ok = !along.empty();
        for (std::int64_t c : across) {
            for (std::int64_t g : along) {
                if (!ok) break;
                const Interval ca{Rational(c) / N, Rational(c + 1) / N}, ga{Rational(g) / N, Rational(g + 1) / N};
                const Box cell = piece.vertical ? Box{ca, ga} : Box{ga, ca};
                const int t = box_entry_time(cell, hole, n, depth);
                if (t == 0) ok = false;
                else found.push_back({piece_point(piece), piece_box(piece), cell, t});
            }
        }
        if (ok) {
            level = std::max(level, depth);
            witnesses.insert(witnesses.end(), found.begin(), found.end());
            return true;
        }
        if (depth >= n_max) {
            failed = piece;
            return false;
        }
        if (piece.lo == piece.hi) return discharge(piece, depth + 1);
        const mpz_class M = N * n;
        std::vector<Rational> cuts{piece.lo};
        for (mpz_class k = floor_of(piece.lo * M) + 1; Rational(k) / M < piece.hi; ++k) cuts.push_back(Rational(k) / M);
        cuts.push_back(piece.hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (!discharge({piece.vertical, piece.fixed, cuts[i], cuts[i + 1]}, depth + 1)) return false;
        return true;
    }
};

std::vector<Piece> boundary_pieces(const Hole2D& hole) {
    std::vector<Piece> pieces;
    auto add_point = [&](const Rational& x, const Rational& y) {
        const Rational fx = frac(x), fy = frac(y);
        for (const Piece& p : pieces)
            if (p.lo == p.hi && p.vertical && p.fixed == fx && p.lo == fy) return;
        pieces.push_back({true, fx, fy, fy});
    };
    for (const Rect& r : hole.rects) {
        for (const Rational& x : {r.x.lo, r.x.hi})
            for (const Rational& y : {r.y.lo, r.y.hi}) add_point(x, y);
    }
    for (const Rect& r : hole.rects) {
        for (const Rational& x : {r.x.lo, r.x.hi}) pieces.push_back({true, frac(x), r.y.lo, r.y.hi});
        if (r.full_height) continue;
        for (const Rational& y : {r.y.lo, r.y.hi}) pieces.push_back({false, frac(y), r.x.lo, r.x.hi});
    }
    return pieces;
}

std::optional<Rational> first_entry_margin(const Hole1D& hole, const Rational& v) {
    for (const Arc& a : hole.arcs) {
        if (!a.contains(v, false)) continue;
        if (!a.wraps()) return std::min(v - a.lo, a.hi - v);
        const Rational up = v > a.lo ? Rational(v - a.lo) : Rational(v + 1 - a.lo);
        const Rational down = v < a.hi ? Rational(a.hi - v) : Rational(a.hi + 1 - v);
        return std::min(up, down);
    }
    return std::nullopt;
}

EscapeOutcome escape_1d(const SystemSpec& sys, const Hole1D& hole, int n_max, const Limits& limits) {
    EscapeOutcome out;
    const int n = sys.branches;
    int bound = 1;
    for (const Arc& arc : hole.arcs) {
        for (const Rational& e : {arc.lo, arc.hi}) {
            const Point p{frac(e), std::nullopt};
            const OrbitSummary orbit = orbit_summary(sys, p);
            const std::size_t span = orbit.preperiod + orbit.period;
            std::optional<Rational> margin;
            std::size_t time = 0;
            for (std::size_t i = 1; i <= span && !margin; ++i) {
                const std::size_t idx = i < span ? i : orbit.preperiod + (i - orbit.preperiod) % orbit.period;
                margin = first_entry_margin(hole, orbit.states[idx].x);
                time = i;
            }
            if (!margin) {
                out.reason = "boundary point " + to_fraction_string(e) + " never enters the hole (preperiod " +
                             std::to_string(orbit.preperiod) + ", period " + std::to_string(orbit.period) + ")";
                return out;
            }
            out.witnesses.push_back({Point{e, std::nullopt}, std::nullopt, std::nullopt, static_cast<int>(time)});
            out.level = std::max(out.level, static_cast<int>(time));
            int N = static_cast<int>(time);
            Rational reach = *margin;
            while (reach <= 1) {
                reach *= n;
                ++N;
            }
            bound = std::max(bound, N);
        }
    }
    out.stabilization_bound = std::min(std::max(bound, n_max), max_depth_for(sys, limits));
    return out;
}

EscapeOutcome escape_2d(const SystemSpec& sys, const Hole2D& hole, int n_max, const Limits& limits) {
    EscapeOutcome out;
    EdgeSearch search{hole, sys.branches, n_max, {}, 0, std::nullopt};
    for (const Piece& piece : boundary_pieces(hole)) {
        if (!search.discharge(piece, 1)) {
            const Piece& bad = *search.failed;
            const Point at = piece_point(bad);
            out.reason = std::string(bad.lo == bad.hi ? "boundary point (" : "boundary segment at (") +
                         to_fraction_string(at.x) + ", " + to_fraction_string(*at.y) +
                         ") not discharged by subdivision depth " + std::to_string(n_max);
            out.level = n_max;
            return out;
        }
    }
    out.witnesses = std::move(search.witnesses);
    out.level = search.level;
    out.stabilization_bound = std::min(std::max(out.level + 1, n_max), max_depth_for(sys, limits));
    return out;
}

} // namespace

std::string to_string(CertMethod method) { return method == CertMethod::Stabilization ? "stabilization" : "escape"; }

KillMasks kill_masks(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits, kernels::Exec exec) {
    if (depth < 1) throw PreconditionError("bracket depth must be >= 1");
    sys.validate();
    hole.check_fits(sys);
    const int n = sys.branches;
    if (depth > max_depth_for(sys, limits))
        throw ResourceError("depth " + std::to_string(depth) + " exceeds the vertex-space cap");
    const mpz_class N = ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(depth));

    kernels::KillPlan plan{n, depth, sys.is_baker(), {}};
    if (hole.is_1d()) {
        for (const Arc& a : hole.as_1d().arcs)
            for (const Interval& p : a.pieces())
                if (p.lo < p.hi) plan.rects.push_back({meets_range(p, N), inside_range(p, N), {}, {}});
    } else {
        for (const Rect& r : hole.as_2d().rects)
            plan.rects.push_back({meets_range(r.x, N), inside_range(r.x, N), meets_range(r.y, N), inside_range(r.y, N)});
    }

    KillMasks m;
    m.alphabet = n;
    m.window = sys.is_baker() ? 2 * depth : depth;
    m.sided = sys.is_baker() ? Sidedness::TwoSided : Sidedness::OneSided;
    const std::uint64_t side = N.get_ui();
    const std::uint64_t space = sys.is_baker() ? side * side : side;
    m.inner_killed.assign(space, 0);
    m.outer_killed.assign(space, 0);
    const auto ambiguous = kernels::fill_kill_masks(plan, m.inner_killed, m.outer_killed, exec);

    if (!ambiguous.empty()) {
        // Cells met by several rectangles: contained in the closure exactly
        // when the covered area equals the cell area.
        const Rational cell_area = Rational(1) / (N * N);
        for (std::uint64_t v : ambiguous) {
            const std::uint64_t fx = v % side;
            std::uint64_t p = v / side, fy = 0;
            for (int i = 0; i < depth; ++i) {
                fy = fy * static_cast<std::uint64_t>(n) + p % static_cast<std::uint64_t>(n);
                p /= static_cast<std::uint64_t>(n);
            }
            const Interval cx{Rational(mpz_class(fx)) / N, Rational(mpz_class(fx + 1)) / N};
            const Interval cy{Rational(mpz_class(fy)) / N, Rational(mpz_class(fy + 1)) / N};
            Rational covered(0);
            for (const Rect& r : hole.as_2d().rects) {
                const Rational w = std::min(cx.hi, r.x.hi) - std::max(cx.lo, r.x.lo);
                const Rational h = std::min(cy.hi, r.y.hi) - std::max(cy.lo, r.y.lo);
                if (w > 0 && h > 0) covered += w * h;
            }
            if (covered == cell_area) m.outer_killed[v] = 1;
        }
    }
    return m;
}

Sft inner_sft(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits) {
    const KillMasks m = kill_masks(sys, hole, depth, limits);
    return masked_sft(m, m.inner_killed);
}

Sft outer_sft(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits) {
    const KillMasks m = kill_masks(sys, hole, depth, limits);
    return masked_sft(m, m.outer_killed);
}

BracketPair bracket_report(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits) {
    const KillMasks m = kill_masks(sys, hole, depth, limits);
    Sft inner = masked_sft(m, m.inner_killed);
    Sft outer = masked_sft(m, m.outer_killed);
    auto hi = sft_entropy(inner, limits);
    auto ho = sft_entropy(outer, limits);
    if (hi && ho && *hi > *ho + 2e-10)
        throw ConvergenceError("inner bracket entropy exceeds outer bracket entropy");
    return BracketPair{depth, std::move(inner), std::move(outer), hi, ho};
}

bool brackets_agree(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits, kernels::Exec exec) {
    return masks_agree(kill_masks(sys, hole, depth, limits, exec), exec);
}

std::optional<Certificate> certify_stabilization(const SystemSpec& sys, const Hole& hole, int n_max,
                                                 const Limits& limits) {
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    for (int d = 1; d <= n_max; ++d) {
        const KillMasks m = kill_masks(sys, hole, d, limits);
        if (masks_agree(m, kernels::default_exec()))
            return Certificate{CertMethod::Stabilization, d, masked_sft(m, m.inner_killed), {}};
    }
    return std::nullopt;
}

EscapeOutcome certify_escape(const SystemSpec& sys, const Hole& hole, int n_max, const Limits& limits) {
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    sys.validate();
    hole.check_fits(sys);
    EscapeOutcome out = hole.is_1d() ? escape_1d(sys, hole.as_1d(), n_max, limits)
                                     : escape_2d(sys, hole.as_2d(), n_max, limits);
    if (!out.reason.empty()) return out;
    auto stab = certify_stabilization(sys, hole, out.stabilization_bound, limits);
    if (!stab) {
        out.reason = "every boundary piece escapes, but the brackets did not agree up to depth " +
                     std::to_string(out.stabilization_bound);
        return out;
    }
    out.certificate = Certificate{CertMethod::Escape, stab->depth, std::move(stab->sft), out.witnesses};
    return out;
}

bool revalidate(const SystemSpec& sys, const Hole& hole, const Certificate& cert, const Limits& limits) {
    if (cert.method == CertMethod::Escape) {
        for (const EscapeWitness& w : cert.witnesses) {
            if (w.time == 0) return false;
            if (!w.box) {
                if (w.time < 0) return false;
                Point p{frac(w.point.x), w.point.y};
                for (int i = 0; i < w.time; ++i) p = map_step(sys, p);
                if (!hole.is_1d() || !std::any_of(hole.as_1d().arcs.begin(), hole.as_1d().arcs.end(),
                                                  [&](const Arc& a) { return a.contains(p.x, false); }))
                    return false;
                continue;
            }
            if (hole.is_1d()) return false;
            if (w.segment) {
                const Box& s = *w.segment;
                const Box& b = *w.box;
                auto inside = [](const Interval& in, const Interval& out) {
                    return out.lo <= in.lo && in.hi <= out.hi;
                };
                auto on_circle = [&](const Interval& in, const Interval& out) {
                    return inside(in, out) || (in.lo == 0 && in.hi == 0 && out.hi == 1);
                };
                if (!on_circle(s.x, b.x) || !on_circle(*s.y, *b.y)) return false;
            }
            const auto image = apply_time(*w.box, w.time, sys.branches);
            if (!image || !box_inside_open_hole(*image, hole.as_2d())) return false;
        }
    }
    const KillMasks m = kill_masks(sys, hole, cert.depth, limits);
    if (!masks_agree(m, kernels::default_exec())) return false;
    return sft_equivalent(cert.sft, masked_sft(m, m.inner_killed), limits);
}

std::vector<std::vector<Word>> oracle_languages(const SystemSpec& sys, const Hole& hole, int max_length,
                                                int survivor_depth, const Limits& limits) {
    if (max_length < 1) throw PreconditionError("oracle word length must be >= 1");
    if (survivor_depth < max_length) throw PreconditionError("survivor depth must be >= the word length");
    const RegionSet regions = survivor_regions(sys, hole, survivor_depth, limits);
    std::vector<std::vector<Word>> out;
    for (int length = 1; length <= max_length; ++length) {
        const std::uint64_t space = ipow64(static_cast<std::uint64_t>(sys.branches), static_cast<unsigned>(length));
        if (space > limits.max_vertex_space) throw ResourceError("oracle word space exceeds the cap");
        const mpz_class N(static_cast<unsigned long>(space));
        std::vector<IndexRange> ranges;
        for (const Box& b : regions.boxes)
            if (b.x.lo < b.x.hi && (!b.y || b.y->lo < b.y->hi)) ranges.push_back(meets_range(b.x, N));
        std::vector<std::uint8_t> marks(space, 0);
        kernels::mark_ranges(ranges, marks, kernels::default_exec());
        std::vector<Word> words;
        for (std::uint64_t c = 0; c < space; ++c)
            if (marks[c]) words.push_back(Word::from_code(c, length, sys.branches));
        out.push_back(std::move(words));
    }
    return out;
}

std::vector<Word> oracle_language(const SystemSpec& sys, const Hole& hole, int length, int survivor_depth,
                                  const Limits& limits) {
    if (length < 1) throw PreconditionError("oracle word length must be >= 1");
    return std::move(oracle_languages(sys, hole, length, survivor_depth, limits).back());
}

std::vector<Word> oracle_language(const SystemSpec& sys, const Hole& hole, int length, const Limits& limits) {
    return oracle_language(sys, hole, length, length, limits);
}

std::pair<SystemSpec, Hole> hole_from_sft(const Sft& s) {
    const int n = s.alphabet();
    std::vector<Arc> arcs;
    for (const Word& w : s.forbidden_words()) {
        const Box b = cylinder_box(SystemSpec::circle(n), w);
        arcs.push_back({b.x.lo, b.x.hi});
    }
    const Hole1D merged = normalize_hole(std::move(arcs), false);
    if (s.sided() == Sidedness::OneSided) return {SystemSpec::circle(n), Hole(merged)};
    std::vector<Rect> strips;
    for (const Arc& a : merged.arcs)
        for (const Interval& p : a.pieces()) strips.push_back(Rect{p, {Rational(0), Rational(1)}, true});
    return {SystemSpec::baker(n), Hole(normalize_hole(std::move(strips), false))};
}

} // namespace exclusion
