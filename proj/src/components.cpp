#include "exclusion/components.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace exclusion {

namespace {

/// Codes of all words of `s.window() + steps` symbols read along walks of
/// `steps` edges inside s.
std::vector<std::uint64_t> recoded_walks(const Sft& s, int steps) {
    const std::uint64_t n = static_cast<std::uint64_t>(s.alphabet());
    struct Frame {
        std::uint64_t word, vertex;
        int left;
    };
    std::vector<Frame> stack;
    for (std::uint64_t v : s.vertices()) stack.push_back({v, v, steps});
    std::vector<std::uint64_t> out;
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.left == 0) {
            out.push_back(f.word);
            continue;
        }
        for (int a = 0; a < s.alphabet(); ++a)
            if (s.has_edge(f.vertex, a))
                stack.push_back({f.word * n + static_cast<std::uint64_t>(a), s.successor(f.vertex, a), f.left - 1});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Closed arc [start, start + length] (length < 1) inside an open hole arc.
bool arc_in_open_hole(const Rational& start, const Rational& length, const Hole1D& hole) {
    for (const Arc& a : hole.arcs) {
        const Rational hi = a.wraps() ? a.hi + 1 : a.hi;
        for (const Rational& s : {start, Rational(start + 1)})
            if (a.lo < s && s + length < hi) return true;
    }
    return false;
}

/// Least k in 1..n_max with f^k([lo, hi]) inside the open hole, or 0.
int interval_entry_time(const Rational& lo, const Rational& hi, const Hole1D& hole, int n, int n_max) {
    Rational start = lo, length = hi - lo;
    for (int k = 1; k <= n_max; ++k) {
        start = frac(start * n);
        length *= n;
        if (length >= 1) return 0;
        if (arc_in_open_hole(start, length, hole)) return k;
    }
    return 0;
}

/// Largest entry time over a subdivision of [lo, hi] into pieces no finer
/// than depth n_max, or nullopt if some piece fails.
std::optional<int> certify_gap(const Rational& lo, const Rational& hi, const Hole1D& hole, int n, int n_max,
                               int depth) {
    if (const int t = interval_entry_time(lo, hi, hole, n, n_max)) return t;
    if (depth >= n_max) return std::nullopt;
    const mpz_class M = ipow(static_cast<unsigned long>(n), static_cast<unsigned long>(depth + 1));
    std::vector<Rational> cuts{lo};
    for (mpz_class k = floor_of(lo * M) + 1; Rational(k) / M < hi; ++k) cuts.push_back(Rational(k) / M);
    cuts.push_back(hi);
    int worst = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto t = certify_gap(cuts[i], cuts[i + 1], hole, n, n_max, depth + 1);
        if (!t) return std::nullopt;
        worst = std::max(worst, *t);
    }
    return worst;
}

} // namespace

bool ComponentForest::out_degree_one() const {
    for (const auto& level : parents)
        for (const auto& p : level)
            if (!p) return false;
    return true;
}

std::size_t ComponentForest::node_count() const {
    std::size_t total = 0;
    for (const auto& level : levels) total += level.size();
    return total;
}

ComponentForest transitive_filtration(const SystemSpec& sys, const Hole& hole, int n_max, const Limits& limits) {
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    ComponentForest forest;
    forest.n_max = n_max;
    for (int d = 1; d <= n_max; ++d) forest.levels.push_back(sft_components(inner_sft(sys, hole, d, limits)));

    const int step = sys.is_baker() ? 2 : 1;
    for (int d = 1; d < n_max; ++d) {
        const auto& next = forest.levels[static_cast<std::size_t>(d)];
        std::unordered_map<std::uint64_t, std::size_t> owner;
        for (std::size_t j = 0; j < next.size(); ++j)
            for (std::uint64_t v : next[j].vertices()) owner.emplace(v, j);
        std::vector<std::optional<std::size_t>> links;
        for (const Sft& c : forest.levels[static_cast<std::size_t>(d - 1)]) {
            std::optional<std::size_t> parent;
            bool single = true;
            for (std::uint64_t w : recoded_walks(c, step)) {
                const auto it = owner.find(w);
                if (it == owner.end() || (parent && *parent != it->second)) {
                    single = false;
                    break;
                }
                parent = it->second;
            }
            if (single && parent) {
                // The parent's language contains the child's at the child's window.
                const auto child_words = language_codes(c, c.window());
                const auto parent_words = language_codes(next[*parent], c.window());
                single = std::includes(parent_words.begin(), parent_words.end(), child_words.begin(),
                                       child_words.end());
            }
            links.push_back(single ? parent : std::nullopt);
        }
        forest.parents.push_back(std::move(links));
    }
    return forest;
}

AmalgamationReport amalgamate_gaps(const SystemSpec& sys, const Hole1D& hole, int n_max) {
    if (sys.is_baker()) throw PreconditionError("gap amalgamation is defined for circle holes");
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    AmalgamationReport rep;
    const std::size_t p = hole.arcs.size();
    if (p == 0) return rep;
    for (std::size_t i = 0; i < p; ++i) {
        const Arc& a = hole.arcs[i];
        const Arc& b = hole.arcs[(i + 1) % p];
        // Gap from the end of arc i to the start of the next arc, on the circle.
        Rational lo = a.hi, hi = b.lo;
        if (hi <= lo) hi += 1;
        std::optional<int> t;
        if (lo >= 1) t = certify_gap(lo - 1, hi - 1, hole, sys.branches, n_max, 0);
        else if (hi <= 1) t = certify_gap(lo, hi, hole, sys.branches, n_max, 0);
        else {
            // Split at the point 0 = 1 so each half is a plain interval.
            const auto left = certify_gap(lo, Rational(1), hole, sys.branches, n_max, 0);
            const auto right = left ? certify_gap(Rational(0), hi - 1, hole, sys.branches, n_max, 0) : std::nullopt;
            if (left && right) t = std::max(*left, *right);
        }
        rep.certified_gap_times.push_back(t);
    }
    // Union arcs across certified gaps.
    std::vector<std::size_t> root(p);
    std::iota(root.begin(), root.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (std::size_t i = 0; i < p; ++i)
        if (rep.certified_gap_times[i]) root[find((i + 1) % p)] = find(i);
    std::vector<std::vector<std::size_t>> groups;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t r = find(i);
        auto [it, fresh] = slot.emplace(r, groups.size());
        if (fresh) groups.emplace_back();
        groups[it->second].push_back(i);
    }
    rep.merged_groups = std::move(groups);
    rep.r_hat = rep.merged_groups.size();
    return rep;
}

BoundReport check_component_bound(const SystemSpec& sys, const Hole1D& hole, int n_max, const Limits& limits) {
    BoundReport rep;
    const Hole h(hole);
    const auto cert = certify_stabilization(sys, h, n_max, limits);
    const Sft sft = cert ? cert->sft : inner_sft(sys, h, n_max, limits);
    rep.certified = cert.has_value();
    rep.depth = cert ? cert->depth : n_max;
    for (const Sft& c : sft_components(sft)) {
        ++rep.component_count;
        if (is_single_cycle(c)) ++rep.countable_count;
        else ++rep.uncountable_count;
    }
    rep.interval_count = hole.arcs.size();
    rep.r_used = amalgamate_gaps(sys, hole, n_max).r_hat;
    rep.partition_boundary_count = static_cast<std::size_t>(sys.branches);
    const std::size_t weight = rep.countable_count + 2 * rep.uncountable_count;
    rep.bound = 2 * rep.r_used + rep.partition_boundary_count;
    rep.satisfied = weight <= rep.bound;
    rep.interval_bound = 2 * rep.interval_count + rep.partition_boundary_count;
    rep.interval_bound_satisfied = weight <= rep.interval_bound;
    return rep;
}

} // namespace exclusion
