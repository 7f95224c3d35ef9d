// exclab: command-line front end for the exclusion library.

#include "exclusion/errors.hpp"
#include "exclusion/io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace exclusion;

namespace {

constexpr int kUnknown = 2;

struct Common {
    std::string config;
    std::string out;
    std::optional<int> depth;
    bool require_certificate = false;
};

void add_common(CLI::App* app, Common& c, bool with_config = true) {
    if (with_config) app->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "write the result here instead of stdout");
    app->add_option("--depth", c.depth, "maximal depth n_max")->check(CLI::PositiveNumber);
    app->add_flag("--require-certificate", c.require_certificate, "exit with status 2 when certification is Unknown");
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("/", std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
}

Json load_config(const Common& c) {
    if (c.config.empty()) throw SchemaError("/", "--config is required");
    Json cfg = read_json(c.config);
    if (c.depth) cfg["depth"] = *c.depth;
    return cfg;
}

Json run_stage(Json cfg, const std::string& stage) {
    cfg["pipeline"] = Json::array({stage});
    cfg["timings"] = false;
    Json rep = run_analysis(cfg);
    Json out{{"system", rep["system"]}, {"hole", rep["hole"]}, {"depth", rep["depth"]}};
    out[stage] = rep[stage];
    if (!rep["warnings"].empty()) out["warnings"] = rep["warnings"];
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact exclusion-subshift analysis for the doubling and Bakers maps"};
    app.require_subcommand(1);

    Common analyze_o, certify_o, components_o, filtration_o, beta_o, witness_o, sample_o, dot_o;

    auto* analyze = app.add_subcommand("analyze", "run the pipeline listed in the config");
    add_common(analyze, analyze_o);

    auto* certify = app.add_subcommand("certify", "certify the exclusion shift of a hole as an SFT");
    add_common(certify, certify_o);

    auto* components = app.add_subcommand("components", "transitive components and the component bound");
    add_common(components, components_o);

    auto* filtration = app.add_subcommand("filtration", "forest of transitive components across depths");
    add_common(filtration, filtration_o);

    auto* beta = app.add_subcommand("beta", "beta-shift classification and the strip hole");
    add_common(beta, beta_o, false);
    std::string beta_t;
    int beta_branches = 2, beta_len = 0;
    std::optional<int> beta_survivor;
    bool beta_classify = false, beta_verify = false;
    beta->add_option("--t", beta_t, "threshold as an exact fraction")->required();
    beta->add_option("--branches", beta_branches, "number of branches")->check(CLI::Range(2, 10));
    beta->add_flag("--classify", beta_classify, "report the expansion class");
    beta->add_option("--language-len", beta_len, "also list the beta language at this length");
    beta->add_flag("--verify-res", beta_verify, "compare with the strip-hole oracle up to --language-len");
    beta->add_option("--survivor-depth", beta_survivor, "survivor depth for --verify-res");

    auto* witness = app.add_subcommand("witness-even", "even-shift non-representability witness");
    add_common(witness, witness_o);
    std::string witness_system = "circle", witness_hole;
    witness->add_option("--system", witness_system, "circle or baker")->check(CLI::IsMember({"circle", "baker"}));
    witness->add_option("--hole", witness_hole, "hole JSON file")->check(CLI::ExistingFile);

    auto* sample = app.add_subcommand("sample", "random rectangle holes in the Bakers square");
    add_common(sample, sample_o, false);
    std::uint64_t seed = 1;
    std::size_t count = 100;
    int corner_depth = 8;
    std::vector<int> n_max_list{4, 8, 12};
    sample->add_option("--seed", seed, "64-bit seed");
    sample->add_option("--count", count, "number of holes")->check(CLI::PositiveNumber);
    sample->add_option("--corner-depth", corner_depth, "corners are k / 2^corner_depth")->check(CLI::Range(1, 30));
    sample->add_option("--n-max", n_max_list, "depths to report")->delimiter(',');

    auto* dot = app.add_subcommand("export-dot", "Graphviz export of an SFT or a component forest");
    add_common(dot, dot_o);
    std::string dot_object = "sft", dot_sft;
    dot->add_option("--object", dot_object, "sft, inner, certificate or forest")
        ->check(CLI::IsMember({"sft", "inner", "certificate", "forest"}));
    dot->add_option("--sft", dot_sft, "SFT JSON file (for --object sft)")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            const Json rep = run_analysis(load_config(analyze_o));
            emit(analyze_o, rep.dump(2) + "\n");
            if (analyze_o.require_certificate && rep.contains("certify") && rep["certify"]["status"] != "Certified")
                return kUnknown;
        } else if (*certify) {
            const Json rep = run_stage(load_config(certify_o), "certify");
            emit(certify_o, rep.dump(2) + "\n");
            if (certify_o.require_certificate && rep["certify"]["status"] != "Certified") return kUnknown;
        } else if (*components) {
            const Json rep = run_stage(load_config(components_o), "components");
            emit(components_o, rep.dump(2) + "\n");
            if (components_o.require_certificate && rep["components"]["status"] != "certified") return kUnknown;
        } else if (*filtration) {
            emit(filtration_o, run_stage(load_config(filtration_o), "filtration").dump(2) + "\n");
        } else if (*beta) {
            Json b{{"t", beta_t}, {"branches", beta_branches}, {"language_len", beta_len}, {"verify_res", beta_verify}};
            if (beta_survivor) b["survivor_depth"] = *beta_survivor;
            Json cfg{{"pipeline", {"beta"}}, {"timings", false}, {"beta", b}, {"depth", beta_o.depth.value_or(8)}};
            Json rep = run_analysis(cfg)["beta"];
            if (!beta_classify) rep.erase("classification");
            emit(beta_o, rep.dump(2) + "\n");
            if (beta_o.require_certificate &&
                (!rep.contains("stabilization") || rep["stabilization"]["status"] != "Certified"))
                return kUnknown;
        } else if (*witness) {
            Json cfg;
            if (!witness_o.config.empty()) {
                cfg = read_json(witness_o.config);
            } else {
                if (witness_hole.empty()) throw SchemaError("/hole", "--hole or --config is required");
                cfg = Json{{"system", {{"kind", witness_system}, {"branches", 2}}}, {"hole", read_json(witness_hole)}};
            }
            emit(witness_o, run_stage(cfg, "witness").dump(2) + "\n");
        } else if (*sample) {
            const GenericityReport r = sample_rectangle_genericity(seed, count, corner_depth, n_max_list);
            emit(sample_o, to_json(r).dump(2) + "\n");
            if (sample_o.require_certificate && r.fractions.rbegin()->second != 1) return kUnknown;
        } else if (*dot) {
            if (dot_object == "sft") {
                if (dot_sft.empty()) throw SchemaError("/", "--sft is required for --object sft");
                emit(dot_o, export_dot(parse_sft(read_json(dot_sft))));
            } else {
                const Json cfg = load_config(dot_o);
                const SystemSpec sys = parse_system(cfg.at("system"), "/system");
                const Hole hole = parse_hole(cfg.at("hole"), "/hole");
                const int depth = cfg.value("depth", 8);
                if (dot_object == "forest") {
                    emit(dot_o, export_dot(transitive_filtration(sys, hole, depth)));
                } else if (dot_object == "inner") {
                    emit(dot_o, export_dot(inner_sft(sys, hole, depth)));
                } else {
                    const auto cert = certify_stabilization(sys, hole, depth);
                    if (!cert) {
                        std::cerr << "no certificate up to depth " << depth << "\n";
                        return dot_o.require_certificate ? kUnknown : 0;
                    }
                    emit(dot_o, export_dot(cert->sft));
                }
            }
        }
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
