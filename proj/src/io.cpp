#include "exclusion/io.hpp"

#include "exclusion/errors.hpp"

#include <chrono>
#include <cstdio>
#include <regex>
#include <sstream>

namespace exclusion {

namespace {

std::string at(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string at(const std::string& pointer, std::size_t i) { return pointer + "/" + std::to_string(i); }

const Json& require(const Json& j, const std::string& key, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(at(pointer, key), "missing required field");
    return *it;
}

int require_int(const Json& j, const std::string& pointer) {
    if (!j.is_number_integer()) throw SchemaError(pointer, "expected an integer");
    return j.get<int>();
}

bool optional_bool(const Json& j, const std::string& key, const std::string& pointer, bool fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) throw SchemaError(at(pointer, key), "expected a boolean");
    return it->get<bool>();
}

Interval parse_pair(const Json& j, const std::string& pointer) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(pointer, "expected a pair [lo, hi]");
    return {parse_fraction(j[0], at(pointer, 0)), parse_fraction(j[1], at(pointer, 1))};
}

Json pair_json(const Interval& iv) { return Json::array({fraction_string(iv.lo), fraction_string(iv.hi)}); }

Json box_json(const Box& b) {
    Json j{{"x", pair_json(b.x)}};
    if (b.y) j["y"] = pair_json(*b.y);
    return j;
}

Word parse_word(const Json& j, int alphabet, const std::string& pointer) {
    if (!j.is_string()) throw SchemaError(pointer, "expected a word string");
    try {
        return Word::from_string(j.get<std::string>(), alphabet);
    } catch (const PreconditionError& e) {
        throw SchemaError(pointer, e.what());
    }
}

Sidedness parse_sided(const Json& j, const std::string& pointer) {
    if (j.is_boolean()) return j.get<bool>() ? Sidedness::TwoSided : Sidedness::OneSided;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "one" || s == "one-sided") return Sidedness::OneSided;
        if (s == "two" || s == "two-sided") return Sidedness::TwoSided;
    }
    throw SchemaError(pointer, "sided must be \"one\" or \"two\"");
}

Json code_json(const Code& c) { return c.to_string(); }

Json sft_summary(const Sft& s) {
    return {{"window", s.window()}, {"vertex_count", s.vertex_count()}, {"edge_count", s.edge_count()}};
}

Json components_json(const Sft& s, const Limits& limits) {
    Json out = Json::array();
    for (const Sft& c : sft_components(s)) {
        Json e = sft_summary(c);
        e["single_cycle"] = is_single_cycle(c);
        e["entropy"] = entropy_json(sft_entropy(c, limits));
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

std::string fraction_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational parse_fraction(const Json& j, const std::string& pointer) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw SchemaError(pointer, "expected an exact fraction string");
    const std::string s = j.get<std::string>();
    static const std::regex frac(R"(^-?\d+(/\d+)?$)");
    static const std::regex dec(R"(^(-?)(\d*)\.(\d+)$)");
    std::smatch m;
    if (std::regex_match(s, frac)) {
        Rational q;
        q.set_str(s, 10);
        if (q.get_den() == 0) throw SchemaError(pointer, "zero denominator");
        q.canonicalize();
        return q;
    }
    if (std::regex_match(s, m, dec)) {
        const std::string digits = m[2].str() + m[3].str();
        mpz_class num(digits.empty() ? "0" : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, m[3].length());
        if (m[1].length() > 0) num = -num;
        return ratio(num, den);
    }
    throw SchemaError(pointer, "not a fraction: \"" + s + "\"");
}

Json entropy_json(const std::optional<double>& h) {
    if (!h) return nullptr;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", *h);
    return std::string(buf);
}

SystemSpec parse_system(const Json& j, const std::string& pointer) {
    const Json& kind = require(j, "kind", pointer);
    SystemSpec sys;
    if (kind == "circle") sys.kind = SystemKind::Circle;
    else if (kind == "baker") sys.kind = SystemKind::Baker;
    else throw SchemaError(at(pointer, "kind"), "unknown system kind");
    if (j.contains("branches")) sys.branches = require_int(j["branches"], at(pointer, "branches"));
    try {
        sys.validate();
    } catch (const PreconditionError& e) {
        throw SchemaError(at(pointer, "branches"), e.what());
    }
    return sys;
}

Hole parse_hole(const Json& j, const std::string& pointer, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    const bool closed = optional_bool(j, "closed", pointer, false);
    if (j.contains("intervals")) {
        const std::string p = at(pointer, "intervals");
        const Json& arr = j["intervals"];
        if (!arr.is_array()) throw SchemaError(p, "expected an array");
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const Interval iv = parse_pair(arr[i], at(p, i));
            arcs.push_back({iv.lo, iv.hi});
        }
        try {
            return Hole(normalize_hole(std::move(arcs), closed, warnings));
        } catch (const PreconditionError& e) {
            throw SchemaError(p, e.what());
        }
    }
    if (j.contains("rects")) {
        const std::string p = at(pointer, "rects");
        const Json& arr = j["rects"];
        if (!arr.is_array()) throw SchemaError(p, "expected an array");
        std::vector<Rect> rects;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ri = at(p, i);
            Rect r;
            r.full_height = optional_bool(arr[i], "full_height", ri, false);
            r.x = parse_pair(require(arr[i], "x", ri), at(ri, "x"));
            if (arr[i].contains("y")) r.y = parse_pair(arr[i]["y"], at(ri, "y"));
            else if (!r.full_height) throw SchemaError(at(ri, "y"), "missing required field");
            rects.push_back(r);
        }
        try {
            return Hole(normalize_hole(std::move(rects), closed, warnings));
        } catch (const PreconditionError& e) {
            throw SchemaError(p, e.what());
        }
    }
    throw SchemaError(at(pointer, "intervals"), "hole needs \"intervals\" or \"rects\"");
}

Sft parse_sft(const Json& j, const std::string& pointer, const Limits& limits) {
    const int n = require_int(require(j, "alphabet_size", pointer), at(pointer, "alphabet_size"));
    if (n < 1 || n > 10) throw SchemaError(at(pointer, "alphabet_size"), "alphabet size must be in [1, 10]");
    const Sidedness sided =
        j.contains("sided") ? parse_sided(j["sided"], at(pointer, "sided")) : Sidedness::OneSided;
    try {
        if (j.contains("vertices")) {
            const std::string pv = at(pointer, "vertices");
            const Json& vs = j["vertices"];
            if (!vs.is_array()) throw SchemaError(pv, "expected an array");
            std::vector<Word> vertices;
            for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(parse_word(vs[i], n, at(pv, i)));
            int window = j.contains("window") ? require_int(j["window"], at(pointer, "window"))
                                              : (vertices.empty() ? 1 : static_cast<int>(vertices[0].size()));
            const std::string pe = at(pointer, "edges");
            const Json& es = require(j, "edges", pointer);
            if (!es.is_array()) throw SchemaError(pe, "expected an array");
            std::vector<std::pair<Word, Word>> edges;
            for (std::size_t i = 0; i < es.size(); ++i) {
                if (!es[i].is_array() || es[i].size() != 2) throw SchemaError(at(pe, i), "expected a pair [u, v]");
                edges.emplace_back(parse_word(es[i][0], n, at(at(pe, i), 0)), parse_word(es[i][1], n, at(at(pe, i), 1)));
            }
            return sft_from_graph(n, window, vertices, edges, sided);
        }
        const int window = require_int(require(j, "window", pointer), at(pointer, "window"));
        const std::string pf = at(pointer, "forbidden");
        const Json& fs = require(j, "forbidden", pointer);
        if (!fs.is_array()) throw SchemaError(pf, "expected an array");
        std::vector<Word> forbidden;
        for (std::size_t i = 0; i < fs.size(); ++i) forbidden.push_back(parse_word(fs[i], n, at(pf, i)));
        return sft_build(n, window, forbidden, sided, limits);
    } catch (const PreconditionError& e) {
        throw SchemaError(pointer.empty() ? "/" : pointer, e.what());
    }
}

Json to_json(const SystemSpec& sys) { return {{"kind", to_string(sys.kind)}, {"branches", sys.branches}}; }

Json to_json(const Point& p) {
    Json j{{"x", fraction_string(p.x)}};
    if (p.y) j["y"] = fraction_string(*p.y);
    return j;
}

Json to_json(const Hole& hole) {
    Json j;
    if (hole.is_1d()) {
        Json arr = Json::array();
        for (const Arc& a : hole.as_1d().arcs) arr.push_back({fraction_string(a.lo), fraction_string(a.hi)});
        j["intervals"] = std::move(arr);
        j["closed"] = hole.as_1d().closed;
    } else {
        Json arr = Json::array();
        for (const Rect& r : hole.as_2d().rects)
            arr.push_back({{"x", pair_json(r.x)}, {"y", pair_json(r.y)}, {"full_height", r.full_height}});
        j["rects"] = std::move(arr);
        j["closed"] = hole.as_2d().closed;
    }
    return j;
}

Json to_json(const Sft& s) {
    const std::vector<Word> forbidden = s.forbidden_words();
    std::size_t window = static_cast<std::size_t>(s.window());
    for (const Word& w : forbidden) window = std::max(window, w.size());
    Json words = Json::array();
    for (const Word& w : forbidden) words.push_back(w.to_string());
    return {{"alphabet_size", s.alphabet()},
            {"window", window},
            {"sided", s.sided() == Sidedness::TwoSided ? "two" : "one"},
            {"forbidden", std::move(words)},
            {"vertex_count", s.vertex_count()},
            {"edge_count", s.edge_count()}};
}

Json to_json(const Certificate& c) {
    Json ws = Json::array();
    for (const EscapeWitness& w : c.witnesses) {
        Json e{{"point", to_json(w.point)}, {"time", w.time}};
        if (w.segment) e["segment"] = box_json(*w.segment);
        if (w.box) e["box"] = box_json(*w.box);
        ws.push_back(std::move(e));
    }
    return {{"method", to_string(c.method)}, {"depth", c.depth}, {"sft", to_json(c.sft)}, {"boundary_witnesses", ws}};
}

Json to_json(const EscapeOutcome& e) {
    Json j{{"certified", e.certificate.has_value()}, {"level", e.level}, {"stabilization_bound", e.stabilization_bound}};
    if (!e.reason.empty()) j["reason"] = e.reason;
    if (e.certificate) j["certificate"] = to_json(*e.certificate);
    return j;
}

Json to_json(const BracketPair& b) {
    return {{"depth", b.depth},
            {"inner", sft_summary(b.inner)},
            {"outer", sft_summary(b.outer)},
            {"inner_entropy", entropy_json(b.inner_entropy)},
            {"outer_entropy", entropy_json(b.outer_entropy)}};
}

Json to_json(const ComponentForest& f) {
    Json levels = Json::array();
    for (std::size_t d = 0; d < f.levels.size(); ++d) {
        Json comps = Json::array();
        for (std::size_t i = 0; i < f.levels[d].size(); ++i) {
            Json c = sft_summary(f.levels[d][i]);
            c["single_cycle"] = is_single_cycle(f.levels[d][i]);
            if (d < f.parents.size()) c["parent"] = f.parents[d][i] ? Json(*f.parents[d][i]) : Json(nullptr);
            comps.push_back(std::move(c));
        }
        levels.push_back({{"depth", d + 1}, {"components", std::move(comps)}});
    }
    return {{"n_max", f.n_max}, {"out_degree_one", f.out_degree_one()}, {"levels", std::move(levels)}};
}

Json to_json(const BoundReport& b) {
    return {{"status", b.certified ? "certified" : "provisional at depth " + std::to_string(b.depth)},
            {"depth", b.depth},
            {"component_count", b.component_count},
            {"countable_count", b.countable_count},
            {"uncountable_count", b.uncountable_count},
            {"r_used", b.r_used},
            {"interval_count", b.interval_count},
            {"partition_boundary_count", b.partition_boundary_count},
            {"bound", b.bound},
            {"satisfied", b.satisfied},
            {"interval_bound", b.interval_bound},
            {"interval_bound_satisfied", b.interval_bound_satisfied}};
}

Json to_json(const AmalgamationReport& a) {
    Json times = Json::array();
    for (const auto& t : a.certified_gap_times) times.push_back(t ? Json(*t) : Json(nullptr));
    return {{"r_hat", a.r_hat}, {"merged_groups", a.merged_groups}, {"certified_gap_times", std::move(times)}};
}

Json to_json(const BetaClass& c) {
    return {{"class", to_string(c.tag)}, {"expansion", code_json(c.expansion)}};
}

Json to_json(const BetaVerification& v) {
    Json j{{"equal", v.equal}, {"max_length", v.max_length}, {"survivor_depth", v.survivor_depth}};
    if (v.first_bad_length) {
        j["first_bad_length"] = *v.first_bad_length;
        j["counterexample"] = v.counterexample->to_string();
        j["counterexample_in_oracle"] = v.counterexample_in_oracle;
    }
    return j;
}

Json to_json(const Witness& w) {
    Json pts = Json::array();
    for (const WitnessPoint& p : w.points) {
        Json e{{"label", p.label}, {"point", to_json(p.point)}, {"future", code_json(p.future)}};
        if (p.past) e["past"] = code_json(*p.past);
        pts.push_back(std::move(e));
    }
    Json facts = Json::array();
    for (const WitnessFact& f : w.facts) {
        Json e{{"kind", to_string(f.kind)}, {"point", f.point}};
        if (f.rect) e["rect"] = *f.rect;
        facts.push_back(std::move(e));
    }
    return {{"kind", to_string(w.kind)},
            {"candidate", w.candidate},
            {"candidate_bound", w.candidate_bound},
            {"points", std::move(pts)},
            {"facts", std::move(facts)}};
}

Json to_json(const GenericityReport& r) {
    Json fractions = Json::object();
    Json failures = Json::object();
    for (const auto& [m, q] : r.fractions) fractions[std::to_string(m)] = fraction_string(q);
    for (const auto& [m, ids] : r.failures) failures[std::to_string(m)] = ids;
    Json details = Json::array();
    for (const GenericitySample& s : r.details) {
        Json e{{"id", s.id}, {"rect", {{"x", pair_json(s.rect.x)}, {"y", pair_json(s.rect.y)}}}};
        e["certified_depth"] = s.certified_depth ? Json(*s.certified_depth) : Json(nullptr);
        if (s.certificate)
            e["certificate"] = {{"method", to_string(s.certificate->method)},
                                {"depth", s.certificate->depth},
                                {"forbidden_count", s.certificate->sft.forbidden_words().size()},
                                {"revalidated", s.revalidated}};
        Json esc{{"certified", s.escape_certified}, {"level", s.escape_level}};
        if (!s.escape_reason.empty()) esc["reason"] = s.escape_reason;
        e["escape"] = std::move(esc);
        if (!s.error.empty()) e["error"] = s.error;
        details.push_back(std::move(e));
    }
    return {{"seed", r.seed},
            {"samples", r.samples},
            {"corner_depth", r.corner_depth},
            {"n_max", r.n_max_list},
            {"fractions", std::move(fractions)},
            {"failures", std::move(failures)},
            {"details", std::move(details)}};
}

std::string export_dot(const Sft& s) {
    std::ostringstream out;
    out << "digraph sft {\n";
    const std::vector<std::uint64_t> vs = s.vertices();
    for (std::uint64_t v : vs)
        out << "  v" << v << " [label=\"" << Word::from_code(v, s.window(), s.alphabet()).to_string() << "\"];\n";
    for (std::uint64_t v : vs)
        for (int a = 0; a < s.alphabet(); ++a)
            if (s.has_edge(v, a)) out << "  v" << v << " -> v" << s.successor(v, a) << " [label=\"" << a << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string export_dot(const ComponentForest& f) {
    std::ostringstream out;
    out << "digraph forest {\n  rankdir=TB;\n";
    for (std::size_t d = 0; d < f.levels.size(); ++d) {
        out << "  subgraph cluster_depth" << d + 1 << " {\n    label=\"depth " << d + 1 << "\";\n    rank=same;\n";
        for (std::size_t i = 0; i < f.levels[d].size(); ++i)
            out << "    d" << d + 1 << "c" << i << " [label=\"" << f.levels[d][i].vertex_count() << " words\"];\n";
        out << "  }\n";
    }
    for (std::size_t d = 0; d < f.parents.size(); ++d)
        for (std::size_t i = 0; i < f.parents[d].size(); ++i)
            if (f.parents[d][i]) out << "  d" << d + 1 << "c" << i << " -> d" << d + 2 << "c" << *f.parents[d][i] << ";\n";
    out << "}\n";
    return out.str();
}

Json run_analysis(const Json& config, const Limits& limits) {
    if (!config.is_object()) throw SchemaError("/", "config must be an object");
    std::vector<std::string> stages{"bracket", "certify"};
    if (config.contains("pipeline")) {
        const Json& p = config["pipeline"];
        if (!p.is_array()) throw SchemaError("/pipeline", "expected an array");
        stages.clear();
        static const std::vector<std::string> known{"bracket", "certify", "components", "filtration", "beta", "witness"};
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_string() || std::find(known.begin(), known.end(), p[i].get<std::string>()) == known.end())
                throw SchemaError(at("/pipeline", i), "unknown pipeline stage");
            stages.push_back(p[i].get<std::string>());
        }
    }
    const bool timings = optional_bool(config, "timings", "", true);
    const int depth = config.contains("depth") ? require_int(config["depth"], "/depth") : 8;
    if (depth < 1) throw SchemaError("/depth", "depth must be >= 1");

    const bool needs_hole = std::any_of(stages.begin(), stages.end(), [](const std::string& s) { return s != "beta"; });
    std::vector<std::string> warnings;
    std::optional<SystemSpec> sys;
    std::optional<Hole> hole;
    if (needs_hole) {
        sys = parse_system(require(config, "system", ""), "/system");
        hole = parse_hole(require(config, "hole", ""), "/hole", &warnings);
        try {
            hole->check_fits(*sys);
        } catch (const PreconditionError& e) {
            throw SchemaError("/hole", e.what());
        }
    }

    Json report;
    if (sys) report["system"] = to_json(*sys);
    if (hole) report["hole"] = to_json(*hole);
    report["depth"] = depth;
    Json times = Json::object();
    for (const std::string& stage : stages) {
        const auto t0 = std::chrono::steady_clock::now();
        if (stage == "bracket") {
            Json b = to_json(bracket_report(*sys, *hole, depth, limits));
            b["agree"] = brackets_agree(*sys, *hole, depth, limits);
            report["bracket"] = std::move(b);
        } else if (stage == "certify") {
            const EscapeOutcome esc = certify_escape(*sys, *hole, depth, limits);
            const auto stab = certify_stabilization(*sys, *hole, depth, limits);
            Json c{{"status", stab ? "Certified" : "Unknown"}};
            if (stab) {
                c["certificate"] = to_json(*stab);
                c["entropy"] = entropy_json(sft_entropy(stab->sft, limits));
                c["revalidated"] = revalidate(*sys, *hole, *stab, limits);
            }
            c["escape"] = to_json(esc);
            report["certify"] = std::move(c);
        } else if (stage == "components") {
            const auto stab = certify_stabilization(*sys, *hole, depth, limits);
            const Sft s = stab ? stab->sft : inner_sft(*sys, *hole, depth, limits);
            Json c{{"status", stab ? "certified" : "provisional at depth " + std::to_string(depth)},
                   {"depth", stab ? stab->depth : depth},
                   {"components", components_json(s, limits)}};
            if (hole->is_1d()) {
                c["bound"] = to_json(check_component_bound(*sys, hole->as_1d(), depth, limits));
                c["amalgamation"] = to_json(amalgamate_gaps(*sys, hole->as_1d(), depth));
            }
            report["components"] = std::move(c);
        } else if (stage == "filtration") {
            report["filtration"] = to_json(transitive_filtration(*sys, *hole, depth, limits));
        } else if (stage == "witness") {
            const Witness w = even_witness(*sys, *hole);
            Json j = to_json(w);
            j["revalidated"] = !revalidate_witness(*sys, *hole, w).has_value();
            report["witness"] = std::move(j);
        } else if (stage == "beta") {
            const Json& bj = require(config, "beta", "");
            BetaThreshold bt{parse_fraction(require(bj, "t", "/beta"), "/beta/t"),
                             bj.contains("branches") ? require_int(bj["branches"], "/beta/branches") : 2};
            try {
                bt.validate();
            } catch (const PreconditionError& e) {
                throw SchemaError("/beta", e.what());
            }
            const BetaNumberCheck chk = is_beta_number(bt);
            Json j{{"t", fraction_string(bt.t)}, {"branches", bt.branches}, {"is_beta_number", chk.is_beta}};
            if (chk.failure_index) j["failure_index"] = *chk.failure_index;
            if (chk.is_beta) {
                j["classification"] = to_json(classify_beta_threshold(bt));
                const auto [bsys, bhole] = beta_res_hole(bt);
                const auto stab = certify_stabilization(bsys, bhole, depth, limits);
                j["stabilization"] = stab ? Json{{"status", "Certified"}, {"depth", stab->depth}}
                                          : Json{{"status", "Unknown"}, {"searched_to", depth}};
                const int len = bj.contains("language_len") ? require_int(bj["language_len"], "/beta/language_len") : 0;
                if (len > 0) {
                    Json words = Json::array();
                    for (const Word& w : beta_language(bt, len)) words.push_back(w.to_string());
                    j["language"] = std::move(words);
                    if (optional_bool(bj, "verify_res", "/beta", false)) {
                        const int sd = bj.contains("survivor_depth")
                                           ? require_int(bj["survivor_depth"], "/beta/survivor_depth")
                                           : len;
                        j["verification"] = to_json(verify_beta_res(bt, len, sd, limits));
                    }
                }
            }
            report["beta"] = std::move(j);
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        times[stage] = ms;
    }
    report["warnings"] = warnings;
    if (timings) report["timings_ms"] = std::move(times);
    return report;
}

} // namespace exclusion
