#pragma once

#include "exclusion/code.hpp"
#include "exclusion/hole.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace exclusion {

/// Threshold t in (0, 1) for the map g(x) = n x mod 1.
struct BetaThreshold {
    Rational t;
    int branches = 2;

    void validate() const;
};

struct BetaNumberCheck {
    bool is_beta = false;
    /// Least k >= 1 with g^k(t) >= t, when the check fails.
    std::optional<std::size_t> failure_index;
};

BetaNumberCheck is_beta_number(const BetaThreshold& bt);

enum class BetaTag { FiniteType, Sofic, NotSoficWithinHorizon };

struct BetaClass {
    BetaTag tag = BetaTag::FiniteType;
    /// The expansion of t as an eventually periodic stream.
    Code expansion;
};

/// Throws PreconditionError when t is not a beta-number.
BetaClass classify_beta_threshold(const BetaThreshold& bt);

/// Greedy (upper) n-ary expansion of t.
Code beta_expansion(const BetaThreshold& bt);
Word beta_code(const BetaThreshold& bt, int length);

/// Words read along sequences whose every shift is below the expansion of t.
std::vector<Word> beta_language(const BetaThreshold& bt, int length);

/// Full-height strip (t, 1) x [0, 1] in the n-branch Bakers map.
std::pair<SystemSpec, Hole> beta_res_hole(const BetaThreshold& bt);

struct BetaVerification {
    bool equal = true;
    int max_length = 0;
    int survivor_depth = 0;
    std::optional<int> first_bad_length;
    std::optional<Word> counterexample;
    bool counterexample_in_oracle = false;
};

/// Compares beta_language with the future-word oracle of the strip hole for
/// every length 1..max_length, using survivors to `survivor_depth` steps.
BetaVerification verify_beta_res(const BetaThreshold& bt, int max_length, int survivor_depth,
                                 const Limits& limits = {});

std::string to_string(BetaTag tag);

} // namespace exclusion
