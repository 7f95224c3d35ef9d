#include "exclusion/kernels.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exclusion::kernels {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

std::vector<std::uint32_t> digit_reversal_table(int alphabet, int depth) {
    const std::uint64_t n = static_cast<std::uint64_t>(alphabet);
    const std::uint64_t size = pow_u64(n, depth);
    std::vector<std::uint32_t> rev(size);
    for (std::uint64_t p = 0; p < size; ++p) {
        std::uint64_t x = p, r = 0;
        for (int i = 0; i < depth; ++i) {
            r = r * n + x % n;
            x /= n;
        }
        rev[p] = static_cast<std::uint32_t>(r);
    }
    return rev;
}

struct VertexVerdict {
    bool inner = false;
    bool outer = false;
    bool ambiguous = false;
};

VertexVerdict classify(const KillPlan& plan, std::int64_t fx, std::int64_t fy) {
    VertexVerdict out;
    int meets = 0;
    for (const RectRanges& r : plan.rects) {
        const bool mx = r.meets_x.contains(fx);
        const bool my = !plan.two_sided || r.meets_y.contains(fy);
        if (mx && my) {
            out.inner = true;
            ++meets;
        }
        if (r.inside_x.contains(fx) && (!plan.two_sided || r.inside_y.contains(fy))) out.outer = true;
    }
    out.ambiguous = plan.two_sided && !out.outer && meets >= 2;
    return out;
}

} // namespace

Exec default_exec() noexcept {
#ifdef _OPENMP
    return Exec::Parallel;
#else
    return Exec::Serial;
#endif
}

std::vector<std::uint64_t> fill_kill_masks(const KillPlan& plan, std::span<std::uint8_t> inner_killed,
                                           std::span<std::uint8_t> outer_killed, Exec exec) {
    const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(plan.alphabet), plan.depth);
    const std::uint64_t space = plan.two_sided ? side * side : side;
    if (inner_killed.size() != space || outer_killed.size() != space)
        throw PreconditionError("fill_kill_masks: mask size does not match plan");
    const std::vector<std::uint32_t> rev =
        plan.two_sided ? digit_reversal_table(plan.alphabet, plan.depth) : std::vector<std::uint32_t>{};

    auto verdict_of = [&](std::uint64_t v) {
        if (!plan.two_sided) return classify(plan, static_cast<std::int64_t>(v), 0);
        return classify(plan, static_cast<std::int64_t>(v % side), static_cast<std::int64_t>(rev[v / side]));
    };

    std::vector<std::uint64_t> ambiguous;
    if (exec == Exec::Serial) {
        for (std::uint64_t v = 0; v < space; ++v) {
            const VertexVerdict d = verdict_of(v);
            inner_killed[v] = d.inner;
            outer_killed[v] = d.outer;
            if (d.ambiguous) ambiguous.push_back(v);
        }
        return ambiguous;
    }

    const auto total = static_cast<std::int64_t>(space);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < total; ++i) {
            const auto v = static_cast<std::uint64_t>(i);
            const VertexVerdict d = verdict_of(v);
            inner_killed[v] = d.inner;
            outer_killed[v] = d.outer;
            if (d.ambiguous) local.push_back(v);
        }
#pragma omp critical
        ambiguous.insert(ambiguous.end(), local.begin(), local.end());
    }
    std::sort(ambiguous.begin(), ambiguous.end());
    return ambiguous;
}

void compute_degrees(std::span<const std::uint8_t> allowed, const std::vector<std::uint8_t>* edge_mask, int alphabet,
                     int window, std::span<std::uint8_t> indeg, std::span<std::uint8_t> outdeg, Exec exec) {
    const std::uint64_t n = static_cast<std::uint64_t>(alphabet);
    const std::uint64_t space = allowed.size();
    const std::uint64_t suffix = pow_u64(n, window - 1);
    auto edge_ok = [&](std::uint64_t u, std::uint64_t a) { return !edge_mask || (*edge_mask)[u * n + a] != 0; };

    auto one = [&](std::uint64_t v) {
        if (!allowed[v]) {
            indeg[v] = outdeg[v] = 0;
            return;
        }
        std::uint8_t in = 0, out = 0;
        for (std::uint64_t a = 0; a < n; ++a) {
            const std::uint64_t w = (v % suffix) * n + a;
            if (allowed[w] && edge_ok(v, a)) ++out;
            const std::uint64_t u = a * suffix + v / n;
            if (allowed[u] && edge_ok(u, v % n)) ++in;
        }
        indeg[v] = in;
        outdeg[v] = out;
    };

    if (exec == Exec::Serial) {
        for (std::uint64_t v = 0; v < space; ++v) one(v);
        return;
    }
    const auto total = static_cast<std::int64_t>(space);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) one(static_cast<std::uint64_t>(i));
}

std::vector<std::uint8_t> trim(std::span<const std::uint8_t> allowed, const std::vector<std::uint8_t>* edge_mask,
                               int alphabet, int window, bool two_sided, Exec exec) {
    const std::uint64_t n = static_cast<std::uint64_t>(alphabet);
    const std::uint64_t space = allowed.size();
    if (space > std::numeric_limits<std::uint32_t>::max())
        throw ResourceError("trim: vertex space exceeds 32-bit index range");
    const std::uint64_t suffix = pow_u64(n, window - 1);
    std::vector<std::uint8_t> indeg(space), outdeg(space);
    compute_degrees(allowed, edge_mask, alphabet, window, indeg, outdeg, exec);

    std::vector<std::uint8_t> alive(allowed.begin(), allowed.end());
    std::vector<std::uint32_t> queue;
    for (std::uint64_t v = 0; v < space; ++v)
        if (alive[v] && (outdeg[v] == 0 || (two_sided && indeg[v] == 0))) queue.push_back(static_cast<std::uint32_t>(v));

    auto edge_ok = [&](std::uint64_t u, std::uint64_t a) { return !edge_mask || (*edge_mask)[u * n + a] != 0; };
    while (!queue.empty()) {
        const std::uint64_t v = queue.back();
        queue.pop_back();
        if (!alive[v]) continue;
        alive[v] = 0;
        for (std::uint64_t a = 0; a < n; ++a) {
            const std::uint64_t w = (v % suffix) * n + a;
            if (alive[w] && edge_ok(v, a) && w != v) {
                if (--indeg[w] == 0 && two_sided) queue.push_back(static_cast<std::uint32_t>(w));
            }
            const std::uint64_t u = a * suffix + v / n;
            if (alive[u] && edge_ok(u, v % n) && u != v) {
                if (--outdeg[u] == 0) queue.push_back(static_cast<std::uint32_t>(u));
            }
        }
    }
    return alive;
}

bool any_essential(std::span<const std::uint8_t> essential, std::span<const std::uint8_t> probe, Exec exec) {
    const auto total = static_cast<std::int64_t>(std::min(essential.size(), probe.size()));
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < total; ++i)
            if (essential[static_cast<std::size_t>(i)] && probe[static_cast<std::size_t>(i)]) return true;
        return false;
    }
    int found = 0;
#pragma omp parallel for schedule(static) reduction(| : found)
    for (std::int64_t i = 0; i < total; ++i)
        found |= (essential[static_cast<std::size_t>(i)] && probe[static_cast<std::size_t>(i)]) ? 1 : 0;
    return found != 0;
}

void mark_ranges(std::span<const IndexRange> ranges, std::span<std::uint8_t> marks, Exec exec) {
    const auto size = static_cast<std::int64_t>(marks.size());
    auto paint = [&](std::int64_t block_lo, std::int64_t block_hi) {
        for (const IndexRange& r : ranges) {
            const std::int64_t lo = std::max(r.lo, block_lo), hi = std::min(r.hi, block_hi);
            for (std::int64_t i = lo; i < hi; ++i) marks[static_cast<std::size_t>(i)] = 1;
        }
    };
    if (exec == Exec::Serial) {
        paint(0, size);
        return;
    }
    // Disjoint index blocks per iteration, so writes never race.
    const std::int64_t blocks = 64;
    const std::int64_t step = (size + blocks - 1) / blocks;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < blocks; ++b) paint(b * step, std::min(size, (b + 1) * step));
}

} // namespace exclusion::kernels
