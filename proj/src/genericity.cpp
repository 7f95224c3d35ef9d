#include "exclusion/genericity.hpp"

#include "exclusion/errors.hpp"

#include <algorithm>

namespace exclusion {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("bound must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const std::uint64_t v = next();
        if (v < limit) return v % bound;
    }
}

namespace {

Rect draw_rect(SplitMix64& rng, int corner_depth) {
    const std::uint64_t grid = std::uint64_t{1} << corner_depth;
    const mpz_class den(static_cast<unsigned long>(grid));
    for (;;) {
        std::uint64_t v[4];
        for (auto& c : v) c = rng.below(grid + 1);
        if (v[0] == v[1] || v[2] == v[3]) continue;
        auto q = [&](std::uint64_t k) { return ratio(mpz_class(static_cast<unsigned long>(k)), den); };
        Rect r;
        r.x = {q(std::min(v[0], v[1])), q(std::max(v[0], v[1]))};
        r.y = {q(std::min(v[2], v[3])), q(std::max(v[2], v[3]))};
        return r;
    }
}

void run_sample(GenericitySample& s, int top, const Limits& limits) {
    const SystemSpec sys = SystemSpec::baker(2);
    const Hole hole(Hole2D{{s.rect}, false});
    try {
        const EscapeOutcome esc = certify_escape(sys, hole, top, limits);
        s.escape_certified = esc.certificate.has_value();
        s.escape_level = esc.level;
        s.escape_reason = esc.reason;
        s.certificate = esc.certificate ? esc.certificate : certify_stabilization(sys, hole, top, limits);
        if (s.certificate) {
            // An escape certificate may carry a depth above the first agreeing one.
            if (s.certificate->method == CertMethod::Escape)
                s.certified_depth = certify_stabilization(sys, hole, s.certificate->depth, limits)->depth;
            else
                s.certified_depth = s.certificate->depth;
            s.revalidated = revalidate(sys, hole, *s.certificate, limits);
        }
    } catch (const ResourceError& e) {
        s.certified_depth.reset();
        s.certificate.reset();
        s.error = e.what();
    }
}

} // namespace

GenericityReport sample_rectangle_genericity(std::uint64_t seed, std::size_t count, int corner_depth,
                                             std::vector<int> n_max_list, const Limits& limits) {
    if (count < 1) throw PreconditionError("count must be >= 1");
    if (corner_depth < 1 || corner_depth > 30) throw PreconditionError("corner_depth must be in [1, 30]");
    if (n_max_list.empty()) throw PreconditionError("n_max list is empty");
    std::sort(n_max_list.begin(), n_max_list.end());
    n_max_list.erase(std::unique(n_max_list.begin(), n_max_list.end()), n_max_list.end());
    if (n_max_list.front() < 1) throw PreconditionError("n_max must be >= 1");

    GenericityReport rep;
    rep.seed = seed;
    rep.samples = count;
    rep.corner_depth = corner_depth;
    rep.n_max_list = n_max_list;
    rep.details.resize(count);

    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        rep.details[i].id = i;
        rep.details[i].rect = draw_rect(rng, corner_depth);
    }

    const int top = n_max_list.back();
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) run_sample(rep.details[static_cast<std::size_t>(i)], top, limits);

    for (int m : n_max_list) {
        std::size_t ok = 0;
        auto& fails = rep.failures[m];
        for (const GenericitySample& s : rep.details) {
            if (s.certified_depth && *s.certified_depth <= m) ++ok;
            else fails.push_back(s.id);
        }
        rep.fractions[m] = ratio(static_cast<long>(ok), static_cast<long>(count));
    }
    return rep;
}

} // namespace exclusion
