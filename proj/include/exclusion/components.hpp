#pragma once

#include "exclusion/brackets.hpp"

#include <optional>
#include <vector>

namespace exclusion {

/// Transitive components of inner_sft(n) for n = 1..n_max, linked to the
/// component of the next depth that contains them.
struct ComponentForest {
    int n_max = 0;
    /// levels[d-1] lists the components at depth d.
    std::vector<std::vector<Sft>> levels;
    /// parents[d-1][i]: index at depth d+1 of the parent of component i at
    /// depth d, for d < n_max. nullopt marks a node whose recoded
    /// walks do not land in exactly one component (out-degree not one).
    std::vector<std::vector<std::optional<std::size_t>>> parents;

    bool out_degree_one() const;
    std::size_t node_count() const;
};

ComponentForest transitive_filtration(const SystemSpec& sys, const Hole& hole, int n_max, const Limits& limits = {});

struct AmalgamationReport {
    std::size_t r_hat = 0;
    /// Hole interval indices grouped by certified gap merges.
    std::vector<std::vector<std::size_t>> merged_groups;
    /// Gap i lies between arc i and arc i+1 (cyclically). Entry time is the
    /// largest time any piece of the gap needed, when the gap is certified.
    std::vector<std::optional<int>> certified_gap_times;
};

AmalgamationReport amalgamate_gaps(const SystemSpec& sys, const Hole1D& hole, int n_max);

struct BoundReport {
    std::size_t component_count = 0;
    std::size_t countable_count = 0;
    std::size_t uncountable_count = 0;
    std::size_t r_used = 0;
    std::size_t interval_count = 0;
    std::size_t partition_boundary_count = 0;
    std::size_t bound = 0;
    bool satisfied = false;
    /// 2p + #boundary, valid without any amalgamation.
    std::size_t interval_bound = 0;
    bool interval_bound_satisfied = false;
    /// False when no stabilization certificate was found up to n_max; the
    /// counts then describe inner_sft(n_max).
    bool certified = false;
    int depth = 0;
};

BoundReport check_component_bound(const SystemSpec& sys, const Hole1D& hole, int n_max, const Limits& limits = {});

} // namespace exclusion
