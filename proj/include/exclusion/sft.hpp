#pragma once

#include "exclusion/limits.hpp"
#include "exclusion/word.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace exclusion {

enum class Sidedness { OneSided, TwoSided };

/// Window-presented shift of finite type.
///
/// Vertices are the allowed length-`window` words, addressed by code. An edge
/// u -> v exists when v extends the last window-1 symbols of u, both are
/// allowed, and (if an edge mask is present) the fused (window+1)-word is
/// marked in the mask. Without a mask every overlap edge is present, which is
/// the situation for any Sft built from forbidden words of length <= window.
class Sft {
public:
    Sft(int alphabet, int window, Sidedness sided, std::vector<std::uint8_t> allowed,
        std::optional<std::vector<std::uint8_t>> edge_mask = std::nullopt);

    static Sft empty(int alphabet, int window, Sidedness sided);
    static Sft full(int alphabet, int window, Sidedness sided);

    int alphabet() const noexcept { return alphabet_; }
    int window() const noexcept { return window_; }
    Sidedness sided() const noexcept { return sided_; }

    /// alphabet^window.
    std::uint64_t vertex_space() const noexcept { return allowed_.size(); }
    bool is_vertex(std::uint64_t code) const { return allowed_[code] != 0; }
    const std::vector<std::uint8_t>& allowed() const noexcept { return allowed_; }
    const std::optional<std::vector<std::uint8_t>>& edge_mask() const noexcept { return edge_mask_; }

    /// Code of the vertex reached from u by appending symbol a (need not be a vertex).
    std::uint64_t successor(std::uint64_t u, int a) const noexcept {
        return (u % suffix_space_) * static_cast<std::uint64_t>(alphabet_) + static_cast<std::uint64_t>(a);
    }
    /// Code of the vertex obtained by prepending symbol a to the first window-1 symbols of v.
    std::uint64_t predecessor(std::uint64_t v, int a) const noexcept {
        return static_cast<std::uint64_t>(a) * suffix_space_ + v / static_cast<std::uint64_t>(alphabet_);
    }
    bool has_edge(std::uint64_t u, int a) const;

    std::vector<std::uint64_t> vertices() const;
    std::size_t vertex_count() const;
    std::size_t edge_count() const;
    bool is_empty() const { return vertex_count() == 0; }

    /// Length-window words that are not vertices, then masked-out fused words.
    std::vector<Word> forbidden_words() const;

    /// Vertices lying on a bi-infinite walk (two-sided) or on a right-infinite
    /// walk (one-sided).
    std::vector<std::uint8_t> essential() const;
    /// Rounds of simultaneous dead-end removal needed to reach the essential
    /// set. A vertex starting a walk of this many edges (in both directions
    /// when two-sided) is essential.
    std::size_t peel_rounds() const;

private:
    int alphabet_;
    int window_;
    Sidedness sided_;
    std::uint64_t suffix_space_;
    std::vector<std::uint8_t> allowed_;
    std::optional<std::vector<std::uint8_t>> edge_mask_;
};

Sft sft_build(int alphabet, int window, const std::vector<Word>& forbidden, Sidedness sided,
              const Limits& limits = {});

/// Builds from an explicit vertex list and edge list (pairs of overlapping words).
Sft sft_from_graph(int alphabet, int window, const std::vector<Word>& vertices,
                   const std::vector<std::pair<Word, Word>>& edges, Sidedness sided);

/// Recodes to a larger window; the result has no edge mask.
Sft higher_block(const Sft& s, int new_window, const Limits& limits = {});

/// Length-L words of the shift, as sorted codes.
std::vector<std::uint64_t> language_codes(const Sft& s, int length);
std::vector<Word> sft_language(const Sft& s, int length);

/// Natural log of the spectral radius; nullopt when the graph has no cycle.
std::optional<double> sft_entropy(const Sft& s, const Limits& limits = {});

/// Cycle-carrying strongly connected components, each as a vertex-induced
/// Sft, ordered by smallest vertex code.
std::vector<Sft> sft_components(const Sft& s);

/// True when the component graph is a single cycle (a periodic orbit).
bool is_single_cycle(const Sft& component);

/// Language equality. Throws PreconditionError on alphabet or sidedness mismatch.
bool sft_equivalent(const Sft& a, const Sft& b, const Limits& limits = {});

} // namespace exclusion
