#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path selected by `Exec`; both must produce identical output, which
// the unit tests and the benchmark target compare directly.

#include <cstdint>
#include <span>
#include <vector>

namespace exclusion::kernels {

enum class Exec { Serial, Parallel };

/// Default execution mode for library callers (Parallel when built with OpenMP).
Exec default_exec() noexcept;

/// Half-open range [lo, hi) of cylinder indices at one resolution.
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool contains(std::int64_t i) const noexcept { return lo <= i && i < hi; }
    bool empty() const noexcept { return hi <= lo; }
};

/// One hole rectangle (or 1D piece) discretized against depth-d cylinders.
/// `meets_*` holds cylinder indices whose closed interval has positive-length
/// overlap with the open side; `inside_*` those whose closed interval lies in
/// the closed side. For 1D pieces only the x ranges are used.
struct RectRanges {
    IndexRange meets_x, inside_x;
    IndexRange meets_y, inside_y;
};

/// Kill plan for depth-d cylinders.
///
/// 1D (two_sided == false): vertex v is the x-cylinder index.
/// 2D (two_sided == true): v = P * N + F, x index F, y index = reverse of the
/// base-n digits of P (most recent past symbol most significant).
struct KillPlan {
    int alphabet = 2;
    int depth = 1;
    bool two_sided = false;
    std::vector<RectRanges> rects;
};

/// Marks inner kills (cylinder openly meets the hole) and outer kills
/// (cylinder contained in the hole closure). Returns the set of vertices that
/// no single rectangle decides for the outer mask but that two or more
/// rectangles openly meet; the caller settles those exactly.
std::vector<std::uint64_t> fill_kill_masks(const KillPlan& plan, std::span<std::uint8_t> inner_killed,
                                           std::span<std::uint8_t> outer_killed, Exec exec);

/// In/out degrees of every allowed vertex in the window graph.
void compute_degrees(std::span<const std::uint8_t> allowed, const std::vector<std::uint8_t>* edge_mask, int alphabet,
                     int window, std::span<std::uint8_t> indeg, std::span<std::uint8_t> outdeg, Exec exec);

/// Iteratively deletes vertices with out-degree zero (and, when two_sided,
/// in-degree zero). Returns the surviving (essential) vertex mask.
std::vector<std::uint8_t> trim(std::span<const std::uint8_t> allowed, const std::vector<std::uint8_t>* edge_mask,
                               int alphabet, int window, bool two_sided, Exec exec);

/// True if some vertex with `probe[v] != 0` survives trimming.
bool any_essential(std::span<const std::uint8_t> essential, std::span<const std::uint8_t> probe, Exec exec);

/// Marks cylinder indices [lo, hi) for each range; ranges may overlap.
void mark_ranges(std::span<const IndexRange> ranges, std::span<std::uint8_t> marks, Exec exec);

} // namespace exclusion::kernels
