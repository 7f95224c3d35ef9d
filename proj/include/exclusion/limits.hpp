#pragma once

#include <cstddef>
#include <cstdint>

namespace exclusion {

/// Size caps; exceeding one raises ResourceError instead of truncating.
struct Limits {
    /// Largest alphabet^window a single Sft may address.
    std::uint64_t max_vertex_space = std::uint64_t{1} << 25;
    /// Largest number of intervals/boxes in a survivor region set.
    std::size_t max_regions = 10'000'000;
    /// Iteration cap for the entropy power iteration.
    std::size_t max_power_iterations = 200'000;
};

} // namespace exclusion
