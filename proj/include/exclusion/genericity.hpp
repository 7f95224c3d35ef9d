#pragma once

#include "exclusion/brackets.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exclusion {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply
/// rounds and a final xor-shift of the new state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct GenericitySample {
    std::size_t id = 0;
    Rect rect;
    /// First depth at which the brackets agree, if any up to the largest n_max.
    std::optional<int> certified_depth;
    std::optional<Certificate> certificate;
    bool revalidated = false;
    bool escape_certified = false;
    int escape_level = 0;
    std::string escape_reason;
    /// Set when a resource cap stopped the sample.
    std::string error;
};

struct GenericityReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    int corner_depth = 0;
    std::vector<int> n_max_list;
    std::map<int, Rational> fractions;
    std::map<int, std::vector<std::size_t>> failures;
    std::vector<GenericitySample> details;
};

/// Draws `count` rectangles in the two-branch Bakers square with corners
/// k / 2^corner_depth (x0, x1, y0, y1 in that order from the stream,
/// redrawing all four when a side is degenerate) and certifies each one.
GenericityReport sample_rectangle_genericity(std::uint64_t seed, std::size_t count, int corner_depth,
                                             std::vector<int> n_max_list, const Limits& limits = {});

} // namespace exclusion
