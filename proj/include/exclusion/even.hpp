#pragma once

#include "exclusion/code.hpp"
#include "exclusion/hole.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exclusion {

/// Length-L factors of the even shift, sorted lexicographically.
std::vector<Word> even_language(int length);

/// True iff every run of ones with a zero on both sides has even length.
/// A one-sided stream may open with a run of any length.
bool in_even_shift(const Code& future);
/// Two-sided version; `past` lists s_{-1}, s_{-2}, ...
bool in_even_shift(const Code& past, const Code& future);

/// Value of the stream read as a base-`alphabet` fraction 0.s_0 s_1 ...
Rational stream_value(const Code& c);

enum class WitnessKind { MustBeInHole, MustBeOutsideHole, CornerPigeonhole };

enum class FactKind {
    InHole,
    NotInHole,
    EvenMember,      // the point's code lies in the even shift
    NotEvenMember,   // the point's code contains 0 1^odd 0
    TailEvenMember,  // the code with its first symbol removed lies in the even shift
    OrbitAvoidsHole, // no point of the two-sided orbit meets the hole
    LowerLeftCorner, // the point is the lower-left corner of rectangle `rect`
};

struct WitnessPoint {
    std::string label;
    Point point;
    Code future;
    std::optional<Code> past;
};

struct WitnessFact {
    FactKind kind;
    std::size_t point;
    std::optional<std::size_t> rect;
};

struct Witness {
    WitnessKind kind = WitnessKind::MustBeInHole;
    /// Candidate index n at which the contradiction closed.
    std::size_t candidate = 0;
    /// Upper bound on n guaranteed by the pigeonhole count.
    std::size_t candidate_bound = 0;
    std::vector<WitnessPoint> points;
    std::vector<WitnessFact> facts;
};

/// Doubling map on the circle. Scans x_n = value of 0 1^{2n+1} 0^inf and
/// y_n = value of 0 1^{2n} 0^inf for n = 0, 1, ... and returns the first
/// violated obligation.
Witness ies_even_witness(const Hole1D& hole);

/// Two-branch Bakers map. Each candidate 0^inf . 1^{2n+1} 0^inf either closes a
/// contradiction or uses up a lower-left corner or an edge-trace interval.
Witness res_even_witness(const SystemSpec& sys, const Hole2D& hole);

/// Dispatches on the system kind.
Witness even_witness(const SystemSpec& sys, const Hole& hole);

/// Re-checks every fact exactly and that the facts close a contradiction.
/// Returns an explanation on failure.
std::optional<std::string> revalidate_witness(const SystemSpec& sys, const Hole& hole, const Witness& w);

std::string to_string(WitnessKind kind);
std::string to_string(FactKind kind);

} // namespace exclusion
