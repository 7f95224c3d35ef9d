#pragma once

#include "exclusion/hole.hpp"
#include "exclusion/kernels.hpp"
#include "exclusion/sft.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exclusion {

/// Inner and outer Markov-hole approximations at one depth.
struct BracketPair {
    int depth = 1;
    Sft inner;
    Sft outer;
    std::optional<double> inner_entropy;
    std::optional<double> outer_entropy;
};

/// Kill masks for depth-n cylinders. Circle: window n, one-sided.
/// Bakers map: window 2n, two-sided, n past symbols then n future symbols.
struct KillMasks {
    int alphabet = 2;
    int window = 1;
    Sidedness sided = Sidedness::OneSided;
    std::vector<std::uint8_t> inner_killed;
    std::vector<std::uint8_t> outer_killed;
};

KillMasks kill_masks(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {},
                     kernels::Exec exec = kernels::default_exec());

/// Forbids depth-n cylinders that openly meet the hole.
Sft inner_sft(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {});
/// Forbids depth-n cylinders whose interior lies in the hole closure.
Sft outer_sft(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {});
BracketPair bracket_report(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {});

/// Inner and outer brackets at `depth` present the same shift.
bool brackets_agree(const SystemSpec& sys, const Hole& hole, int depth, const Limits& limits = {},
                    kernels::Exec exec = kernels::default_exec());

/// Boundary point or boundary segment together with the time its
/// neighbourhood is inside the hole. For segments, `box` is the cylinder box
/// (containing the segment) whose image under f^time is inside the hole.
struct EscapeWitness {
    Point point;
    std::optional<Box> segment;
    std::optional<Box> box;
    int time = 0;
};

enum class CertMethod { Stabilization, Escape };

struct Certificate {
    CertMethod method = CertMethod::Stabilization;
    int depth = 0;
    Sft sft;
    std::vector<EscapeWitness> witnesses;
};

struct EscapeOutcome {
    std::optional<Certificate> certificate;
    std::vector<EscapeWitness> witnesses;
    /// Deepest subdivision depth or largest |time| the boundary analysis used.
    int level = 0;
    /// Depth up to which stabilization was searched after a successful escape.
    int stabilization_bound = 0;
    std::string reason;
};

std::optional<Certificate> certify_stabilization(const SystemSpec& sys, const Hole& hole, int n_max,
                                                 const Limits& limits = {});

/// Boundary escape criterion. 1D holes are decided exactly; 2D holes use
/// corner orbits up to |i| <= n_max and dyadic edge subdivision to depth n_max.
EscapeOutcome certify_escape(const SystemSpec& sys, const Hole& hole, int n_max, const Limits& limits = {});

/// Re-checks a certificate from scratch: exact orbits for escape witnesses and
/// bracket agreement at the certified depth.
bool revalidate(const SystemSpec& sys, const Hole& hole, const Certificate& cert, const Limits& limits = {});

/// Length-L words whose cylinder meets the depth-L survivor region in a set
/// with nonempty interior (Bakers map: the word is read as the future part).
std::vector<Word> oracle_language(const SystemSpec& sys, const Hole& hole, int length, const Limits& limits = {});

/// Same, with survivors computed to `survivor_depth` >= length steps. Deeper
/// survivor sets give smaller languages that approach the exclusion language.
std::vector<Word> oracle_language(const SystemSpec& sys, const Hole& hole, int length, int survivor_depth,
                                  const Limits& limits = {});

/// Oracle languages for every length 1..max_length from one survivor set.
std::vector<std::vector<Word>> oracle_languages(const SystemSpec& sys, const Hole& hole, int max_length,
                                                int survivor_depth, const Limits& limits = {});

/// Hole whose exclusion shift is `s`: the union of the cylinders of its
/// forbidden words, merged where adjacent. One-sided shifts give a circle
/// hole, two-sided shifts a union of full-height Bakers strips.
std::pair<SystemSpec, Hole> hole_from_sft(const Sft& s);

std::string to_string(CertMethod method);

} // namespace exclusion
