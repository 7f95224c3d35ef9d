#include "exclusion/sft.hpp"

#include "exclusion/errors.hpp"
#include "exclusion/kernels.hpp"
#include "exclusion/rational.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace exclusion {

namespace {

std::uint64_t space_of(int alphabet, int window, const Limits& limits) {
    const std::uint64_t space = ipow64(static_cast<std::uint64_t>(alphabet), static_cast<unsigned>(window));
    if (space > limits.max_vertex_space)
        throw ResourceError("vertex space " + std::to_string(space) + " exceeds cap " +
                            std::to_string(limits.max_vertex_space));
    return space;
}

} // namespace

Sft::Sft(int alphabet, int window, Sidedness sided, std::vector<std::uint8_t> allowed,
         std::optional<std::vector<std::uint8_t>> edge_mask)
    : alphabet_(alphabet), window_(window), sided_(sided), allowed_(std::move(allowed)),
      edge_mask_(std::move(edge_mask)) {
    if (alphabet < 2 || alphabet > 10) throw PreconditionError("alphabet size must be in [2, 10]");
    if (window < 1) throw PreconditionError("window must be >= 1");
    const std::uint64_t n = static_cast<std::uint64_t>(alphabet);
    suffix_space_ = ipow64(n, static_cast<unsigned>(window - 1));
    if (allowed_.size() != suffix_space_ * n) throw PreconditionError("allowed mask has wrong size");
    if (edge_mask_ && edge_mask_->size() != allowed_.size() * n)
        throw PreconditionError("edge mask has wrong size");
}

Sft Sft::empty(int alphabet, int window, Sidedness sided) {
    return Sft(alphabet, window, sided, std::vector<std::uint8_t>(space_of(alphabet, window, {}), 0));
}

Sft Sft::full(int alphabet, int window, Sidedness sided) {
    return Sft(alphabet, window, sided, std::vector<std::uint8_t>(space_of(alphabet, window, {}), 1));
}

bool Sft::has_edge(std::uint64_t u, int a) const {
    const std::uint64_t v = successor(u, a);
    if (!allowed_[u] || !allowed_[v]) return false;
    return !edge_mask_ || (*edge_mask_)[u * static_cast<std::uint64_t>(alphabet_) + static_cast<std::uint64_t>(a)];
}

std::vector<std::uint64_t> Sft::vertices() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < allowed_.size(); ++v)
        if (allowed_[v]) out.push_back(v);
    return out;
}

std::size_t Sft::vertex_count() const {
    return static_cast<std::size_t>(std::count(allowed_.begin(), allowed_.end(), std::uint8_t{1}));
}

std::size_t Sft::edge_count() const {
    std::size_t count = 0;
    for (std::uint64_t v = 0; v < allowed_.size(); ++v)
        if (allowed_[v])
            for (int a = 0; a < alphabet_; ++a) count += has_edge(v, a) ? 1 : 0;
    return count;
}

std::vector<Word> Sft::forbidden_words() const {
    std::vector<Word> out;
    for (std::uint64_t v = 0; v < allowed_.size(); ++v)
        if (!allowed_[v]) out.push_back(Word::from_code(v, window_, alphabet_));
    if (edge_mask_)
        for (std::uint64_t u = 0; u < allowed_.size(); ++u)
            for (int a = 0; a < alphabet_; ++a)
                if (allowed_[u] && allowed_[successor(u, a)] && !has_edge(u, a))
                    out.push_back(Word::from_code(u * static_cast<std::uint64_t>(alphabet_) + static_cast<std::uint64_t>(a),
                                                  window_ + 1, alphabet_));
    return out;
}

std::vector<std::uint8_t> Sft::essential() const {
    return kernels::trim(allowed_, edge_mask_ ? &*edge_mask_ : nullptr, alphabet_, window_,
                         sided_ == Sidedness::TwoSided, kernels::default_exec());
}

std::size_t Sft::peel_rounds() const {
    const std::uint64_t space = allowed_.size();
    std::vector<std::uint8_t> alive = allowed_;
    const bool two = sided_ == Sidedness::TwoSided;
    std::size_t rounds = 0;
    while (true) {
        std::vector<std::uint64_t> doomed;
        for (std::uint64_t v = 0; v < space; ++v) {
            if (!alive[v]) continue;
            bool out = false, in = false;
            for (int a = 0; a < alphabet_; ++a) {
                const std::uint64_t w = successor(v, a);
                out = out || (alive[w] && has_edge(v, a));
                const std::uint64_t u = predecessor(v, a);
                in = in || (alive[u] && has_edge(u, static_cast<int>(v % static_cast<std::uint64_t>(alphabet_))));
            }
            if (!out || (two && !in)) doomed.push_back(v);
        }
        if (doomed.empty()) return rounds;
        for (std::uint64_t v : doomed) alive[v] = 0;
        ++rounds;
    }
}

Sft sft_build(int alphabet, int window, const std::vector<Word>& forbidden, Sidedness sided, const Limits& limits) {
    if (window < 1) throw PreconditionError("sft_build: window must be >= 1");
    std::set<std::pair<std::size_t, std::uint64_t>> banned;
    for (const Word& w : forbidden) {
        if (w.alphabet() != alphabet) throw PreconditionError("sft_build: forbidden word alphabet mismatch");
        if (w.size() > static_cast<std::size_t>(window))
            throw PreconditionError("sft_build: window " + std::to_string(window) +
                                    " is shorter than forbidden word '" + w.to_string() + "'");
        if (w.empty()) throw PreconditionError("sft_build: empty forbidden word");
        banned.emplace(w.size(), w.code());
    }
    const std::uint64_t n = static_cast<std::uint64_t>(alphabet);
    const std::uint64_t space = space_of(alphabet, window, limits);
    std::vector<std::size_t> lengths;
    for (const auto& [len, code] : banned)
        if (lengths.empty() || lengths.back() != len) lengths.push_back(len);

    std::vector<std::uint8_t> allowed(space, 1);
    for (std::uint64_t v = 0; v < space && !banned.empty(); ++v) {
        const std::vector<Symbol> sym = decode_symbols(v, window, alphabet);
        for (std::size_t len : lengths) {
            for (std::size_t pos = 0; pos + len <= sym.size() && allowed[v]; ++pos) {
                std::uint64_t c = 0;
                for (std::size_t i = 0; i < len; ++i) c = c * n + sym[pos + i];
                if (banned.count({len, c})) allowed[v] = 0;
            }
        }
    }
    return Sft(alphabet, window, sided, std::move(allowed));
}

Sft sft_from_graph(int alphabet, int window, const std::vector<Word>& vertices,
                   const std::vector<std::pair<Word, Word>>& edges, Sidedness sided) {
    Sft skeleton = Sft::empty(alphabet, window, sided);
    std::vector<std::uint8_t> allowed(skeleton.vertex_space(), 0);
    std::vector<std::uint8_t> mask(skeleton.vertex_space() * static_cast<std::uint64_t>(alphabet), 0);
    for (const Word& v : vertices) {
        if (v.size() != static_cast<std::size_t>(window) || v.alphabet() != alphabet)
            throw PreconditionError("sft_from_graph: vertex '" + v.to_string() + "' has wrong length or alphabet");
        allowed[v.code()] = 1;
    }
    for (const auto& [u, v] : edges) {
        if (u.size() != static_cast<std::size_t>(window) || v.size() != static_cast<std::size_t>(window))
            throw PreconditionError("sft_from_graph: edge endpoint has wrong length");
        if (!allowed[u.code()] || !allowed[v.code()])
            throw PreconditionError("sft_from_graph: edge endpoint is not a vertex");
        if (u.sub(1, u.size() - 1) != v.sub(0, v.size() - 1))
            throw PreconditionError("sft_from_graph: edge " + u.to_string() + "->" + v.to_string() +
                                    " violates the overlap condition");
        mask[u.code() * static_cast<std::uint64_t>(alphabet) + v[v.size() - 1]] = 1;
    }
    return Sft(alphabet, window, sided, std::move(allowed), std::move(mask));
}

Sft higher_block(const Sft& s, int new_window, const Limits& limits) {
    if (new_window < s.window()) throw PreconditionError("higher_block: cannot shrink the window");
    if (new_window == s.window() && !s.edge_mask()) return s;
    const std::uint64_t n = static_cast<std::uint64_t>(s.alphabet());
    const std::uint64_t space = space_of(s.alphabet(), new_window, limits);
    const std::uint64_t vspace = s.vertex_space();
    const int extra = new_window - s.window();
    std::vector<std::uint8_t> allowed(space, 0);
    if (extra == 0) {
        // Same window with an edge mask: vertices stay, but the mask cannot be
        // expressed without growing the window by one.
        return higher_block(s, new_window + 1, limits);
    }
    for (std::uint64_t w = 0; w < space; ++w) {
        // Leading window, then slide.
        std::uint64_t u = w / ipow64(n, static_cast<unsigned>(extra));
        if (!s.is_vertex(u)) continue;
        bool ok = true;
        for (int k = extra - 1; k >= 0 && ok; --k) {
            const int a = static_cast<int>((w / ipow64(n, static_cast<unsigned>(k))) % n);
            ok = s.has_edge(u, a);
            u = s.successor(u, a);
        }
        allowed[w] = ok;
    }
    (void)vspace;
    return Sft(s.alphabet(), new_window, s.sided(), std::move(allowed));
}

std::vector<std::uint64_t> language_codes(const Sft& s, int length) {
    if (length < 0) throw PreconditionError("language length must be >= 0");
    const std::vector<std::uint8_t> ess = s.essential();
    const bool nonempty = std::find(ess.begin(), ess.end(), std::uint8_t{1}) != ess.end();
    if (length == 0) return nonempty ? std::vector<std::uint64_t>{0} : std::vector<std::uint64_t>{};
    const std::uint64_t n = static_cast<std::uint64_t>(s.alphabet());
    const int m = s.window();
    std::set<std::uint64_t> found;
    if (length <= m) {
        const std::uint64_t modulus = ipow64(n, static_cast<unsigned>(length));
        for (std::uint64_t v = 0; v < ess.size(); ++v) {
            if (!ess[v]) continue;
            for (int off = 0; off + length <= m; ++off)
                found.insert((v / ipow64(n, static_cast<unsigned>(m - length - off))) % modulus);
        }
        return {found.begin(), found.end()};
    }
    (void)ipow64(n, static_cast<unsigned>(length));
    // Extend each essential vertex by walks through essential vertices.
    struct Frame {
        std::uint64_t word;
        std::uint64_t vertex;
        int remaining;
    };
    std::vector<Frame> stack;
    for (std::uint64_t v = 0; v < ess.size(); ++v)
        if (ess[v]) stack.push_back({v, v, length - m});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.remaining == 0) {
            found.insert(f.word);
            continue;
        }
        for (int a = 0; a < s.alphabet(); ++a) {
            const std::uint64_t w = s.successor(f.vertex, a);
            if (ess[w] && s.has_edge(f.vertex, a))
                stack.push_back({f.word * n + static_cast<std::uint64_t>(a), w, f.remaining - 1});
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Word> sft_language(const Sft& s, int length) {
    std::vector<Word> out;
    for (std::uint64_t c : language_codes(s, length)) out.push_back(Word::from_code(c, length, s.alphabet()));
    return out;
}

std::vector<Sft> sft_components(const Sft& s) {
    // Iterative Tarjan over the window graph.
    const std::uint64_t space = s.vertex_space();
    constexpr std::uint32_t unvisited = 0xffffffffu;
    std::vector<std::uint32_t> index(space, unvisited), low(space, 0);
    std::vector<std::uint8_t> on_stack(space, 0);
    std::vector<std::uint64_t> stack;
    std::vector<std::vector<std::uint64_t>> comps;
    std::uint32_t counter = 0;

    struct Frame {
        std::uint64_t v;
        int next_symbol;
    };
    std::vector<Frame> call;
    for (std::uint64_t root = 0; root < space; ++root) {
        if (!s.is_vertex(root) || index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next_symbol < s.alphabet()) {
                const int a = f.next_symbol++;
                if (!s.has_edge(f.v, a)) continue;
                const std::uint64_t w = s.successor(f.v, a);
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::uint64_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] != index[v]) continue;
            std::vector<std::uint64_t> comp;
            std::uint64_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp.push_back(w);
            } while (w != v);
            bool cyclic = comp.size() > 1;
            if (!cyclic)
                for (int a = 0; a < s.alphabet() && !cyclic; ++a) cyclic = s.has_edge(v, a) && s.successor(v, a) == v;
            if (cyclic) comps.push_back(std::move(comp));
        }
    }
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<Sft> out;
    out.reserve(comps.size());
    for (const auto& c : comps) {
        std::vector<std::uint8_t> allowed(space, 0);
        for (std::uint64_t v : c) allowed[v] = 1;
        out.emplace_back(s.alphabet(), s.window(), s.sided(), std::move(allowed), s.edge_mask());
    }
    return out;
}

bool is_single_cycle(const Sft& component) {
    for (std::uint64_t v : component.vertices()) {
        int out = 0;
        for (int a = 0; a < component.alphabet(); ++a) out += component.has_edge(v, a) ? 1 : 0;
        if (out != 1) return false;
    }
    return !component.is_empty();
}

std::optional<double> sft_entropy(const Sft& s, const Limits& limits) {
    const std::vector<Sft> comps = sft_components(s);
    if (comps.empty()) return std::nullopt;
    double best = 0.0;
    for (const Sft& c : comps) {
        // A lone cycle has spectral radius 1; power iteration on it mixes slowly.
        if (is_single_cycle(c)) continue;
        const std::vector<std::uint64_t> verts = c.vertices();
        std::unordered_map<std::uint64_t, std::size_t> local;
        for (std::size_t i = 0; i < verts.size(); ++i) local.emplace(verts[i], i);
        std::vector<std::vector<std::size_t>> succ(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (int a = 0; a < c.alphabet(); ++a)
                if (c.has_edge(verts[i], a)) succ[i].push_back(local.at(c.successor(verts[i], a)));

        // Power iteration on A + I, which is primitive on an irreducible
        // component, so the ratio converges to rho(A) + 1.
        std::vector<double> v(verts.size(), 1.0 / static_cast<double>(verts.size())), next(verts.size());
        double ratio = 0.0;
        bool converged = false;
        for (std::size_t it = 0; it < limits.max_power_iterations; ++it) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                next[i] += v[i];
                for (std::size_t j : succ[i]) next[j] += v[i];
            }
            double sum = 0.0;
            for (double x : next) sum += x;
            for (double& x : next) x /= sum;
            v.swap(next);
            if (it > 0 && std::abs(sum - ratio) < 1e-13) {
                ratio = sum;
                converged = true;
                break;
            }
            ratio = sum;
        }
        if (!converged) throw ConvergenceError("sft_entropy: power iteration did not reach 1e-10");
        best = std::max(best, std::log(ratio - 1.0));
    }
    return best;
}

bool sft_equivalent(const Sft& a, const Sft& b, const Limits& limits) {
    if (a.alphabet() != b.alphabet()) throw PreconditionError("sft_equivalent: alphabet mismatch");
    if (a.sided() != b.sided()) throw PreconditionError("sft_equivalent: sidedness mismatch");
    const int wa = a.window() + (a.edge_mask() ? 1 : 0);
    const int wb = b.window() + (b.edge_mask() ? 1 : 0);
    const int w = std::max(wa, wb);
    const Sft la = higher_block(a, w, limits);
    const Sft lb = higher_block(b, w, limits);
    return la.essential() == lb.essential();
}

} // namespace exclusion
