#include "doctest.h"

#include "exclusion/errors.hpp"
#include "exclusion/io.hpp"

#include <random>

using namespace exclusion;

namespace {

std::string pointer_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const SchemaError& e) {
        return e.pointer();
    }
    return "<no error>";
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("fraction strings") {
    CHECK(parse_fraction(Json("3/4"), "") == ratio(3, 4));
    CHECK(parse_fraction(Json("6/8"), "") == ratio(3, 4));
    CHECK(parse_fraction(Json("0.49"), "") == ratio(49, 100));
    CHECK(parse_fraction(Json(".5"), "") == ratio(1, 2));
    CHECK(parse_fraction(Json("1"), "") == 1);
    CHECK(parse_fraction(Json(0), "") == 0);
    CHECK(fraction_string(ratio(10, 4)) == "5/2");
    CHECK(fraction_string(Rational(1)) == "1");
    CHECK(pointer_of([] { parse_fraction(Json("abc"), "/x"); }) == "/x");
    CHECK(pointer_of([] { parse_fraction(Json("1/0"), "/y"); }) == "/y");
    CHECK(pointer_of([] { parse_fraction(Json(0.5), "/z"); }) == "/z");
    CHECK(entropy_json(0.48121182505960347).get<std::string>() == "0.4812118251");
    CHECK(entropy_json(std::nullopt).is_null());
}

TEST_CASE("system and hole parsing") {
    CHECK(parse_system(Json::parse(R"({"kind":"baker","branches":3})")) == SystemSpec::baker(3));
    CHECK(parse_system(Json::parse(R"({"kind":"circle"})")) == SystemSpec::circle(2));
    CHECK(pointer_of([] { parse_system(Json::parse(R"({"kind":"torus"})"), "/system"); }) == "/system/kind");
    CHECK(pointer_of([] { parse_system(Json::parse(R"({"kind":"circle","branches":1})"), "/system"); }) ==
          "/system/branches");

    std::vector<std::string> warnings;
    const Hole h = parse_hole(Json::parse(R"({"intervals":[["1/4","1/2"],["3/8","5/8"]]})"), "/hole", &warnings);
    REQUIRE(h.is_1d());
    REQUIRE(h.as_1d().arcs.size() == 1);
    CHECK(h.as_1d().arcs[0] == Arc{ratio(1, 4), ratio(5, 8)});
    CHECK(warnings.size() == 1);

    const Hole r = parse_hole(Json::parse(R"({"rects":[{"x":["3/4","1"],"full_height":true}]})"));
    REQUIRE_FALSE(r.is_1d());
    CHECK(r.as_2d().rects[0].y == Interval{Rational(0), Rational(1)});
    CHECK(pointer_of([] { parse_hole(Json::parse(R"({"intervals":[["1/4","q"]]})"), "/hole"); }) ==
          "/hole/intervals/0/1");
    CHECK(pointer_of([] { parse_hole(Json::parse(R"({"rects":[{"x":["0","1"]}]})"), "/hole"); }) ==
          "/hole/rects/0/y");
    CHECK(pointer_of([] { parse_hole(Json::parse(R"({"circles":[]})"), "/hole"); }) == "/hole/intervals");

    const Json back = to_json(h);
    CHECK(back.dump() == R"({"intervals":[["1/4","5/8"]],"closed":false})");
}

TEST_CASE("sft JSON round trip") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int m = 1 + static_cast<int>(rng() % 3);
        std::vector<Word> forbidden;
        for (int k = 0; k < 3; ++k) {
            const int len = 1 + static_cast<int>(rng() % m);
            forbidden.push_back(Word::from_code(rng() % static_cast<std::uint64_t>(std::pow(n, len)), len, n));
        }
        const Sidedness sided = t % 2 ? Sidedness::TwoSided : Sidedness::OneSided;
        const Sft s = sft_build(n, m, forbidden, sided);
        const Sft back = parse_sft(to_json(s));
        CHECK(sft_equivalent(s, back));
    }
    // An edge mask is written as forbidden words one longer than the window.
    const Sft masked = sft_from_graph(2, 1, {Word::from_string("0", 2), Word::from_string("1", 2)},
                                      {{Word::from_string("0", 2), Word::from_string("1", 2)},
                                       {Word::from_string("1", 2), Word::from_string("0", 2)},
                                       {Word::from_string("0", 2), Word::from_string("0", 2)}},
                                      Sidedness::TwoSided);
    const Json mj = to_json(masked);
    CHECK(mj["window"] == 2);
    CHECK(mj["forbidden"] == Json::array({"11"}));
    CHECK(sft_equivalent(masked, parse_sft(mj)));

    const Sft graph = parse_sft(Json::parse(
        R"({"alphabet_size":2,"sided":"two","vertices":["0","1"],"edges":[["0","0"],["0","1"],["1","0"]]})"));
    CHECK(sft_equivalent(graph, masked));
    CHECK(pointer_of([] { parse_sft(Json::parse(R"({"alphabet_size":2,"window":1,"forbidden":["2"]})"), "/sft"); }) ==
          "/sft/forbidden/0");
}

TEST_CASE("DOT export") {
    const Sft golden = sft_build(2, 2, {Word::from_string("11", 2)}, Sidedness::TwoSided);
    const std::string dot = export_dot(golden);
    CHECK(count_of(dot, "[label=\"0") + count_of(dot, "[label=\"1") >= 3);
    CHECK(count_of(dot, " -> ") == 5);
    CHECK(count_of(dot, "label=\"01\"") == 1);
    CHECK(export_dot(Sft::empty(2, 2, Sidedness::TwoSided)) == "digraph sft {\n}\n");
    CHECK(export_dot(golden) == dot);

    const ComponentForest f = transitive_filtration(SystemSpec::circle(2), Hole(make_hole_1d({{ratio(1, 4), ratio(3, 4)}})), 2);
    const std::string fd = export_dot(f);
    CHECK(count_of(fd, "subgraph cluster_") == 2);
    CHECK(count_of(fd, "rank=same") == 2);
    CHECK(count_of(fd, " -> ") == f.levels[0].size());
}

TEST_CASE("run_analysis on the golden-mean hole") {
    const Json cfg = Json::parse(R"({"system":{"kind":"circle","branches":2},
        "hole":{"intervals":[["3/4","1"]]}, "depth":4, "timings":false,
        "pipeline":["bracket","certify","components","filtration"]})");
    const Json rep = run_analysis(cfg);
    CHECK(rep["certify"]["status"] == "Certified");
    CHECK(rep["certify"]["certificate"]["depth"] == 2);
    CHECK(rep["certify"]["certificate"]["sft"]["forbidden"] == Json::array({"11"}));
    CHECK(rep["certify"]["entropy"] == "0.4812118251");
    CHECK(rep["certify"]["revalidated"] == true);
    CHECK(rep["components"]["components"].size() == 1);
    CHECK(rep["components"]["bound"]["satisfied"] == true);
    CHECK(rep["filtration"]["out_degree_one"] == true);
    CHECK_FALSE(rep.contains("timings_ms"));
    CHECK(run_analysis(cfg).dump() == rep.dump());
}

TEST_CASE("run_analysis schema errors and warnings") {
    CHECK(pointer_of([] { run_analysis(Json::parse(R"({"system":{"kind":"torus"},"hole":{"intervals":[]}})")); }) ==
          "/system/kind");
    CHECK(pointer_of([] { run_analysis(Json::parse(R"({"pipeline":["bracket","dance"]})")); }) == "/pipeline/1");
    CHECK(pointer_of([] { run_analysis(Json::parse(R"({"hole":{"intervals":[]}})")); }) == "/system");
    CHECK(pointer_of([] {
              run_analysis(Json::parse(R"({"system":{"kind":"baker"},"hole":{"intervals":[["0","1/2"]]}})"));
          }) == "/hole");
    const Json rep = run_analysis(Json::parse(R"({"system":{"kind":"circle"},
        "hole":{"intervals":[["1/4","1/2"],["3/8","5/8"]]},"depth":3,"pipeline":["bracket"]})"));
    CHECK(rep["warnings"].size() == 1);
    CHECK(rep["hole"]["intervals"].size() == 1);
    CHECK(rep.contains("timings_ms"));
}

TEST_CASE("run_analysis beta and witness stages") {
    const Json rep = run_analysis(Json::parse(R"({"pipeline":["beta"],"depth":6,
        "beta":{"t":"3/4","language_len":4,"verify_res":true}})"));
    CHECK(rep["beta"]["is_beta_number"] == true);
    CHECK(rep["beta"]["classification"]["class"] == "FiniteType");
    CHECK(rep["beta"]["stabilization"]["status"] == "Certified");
    CHECK(rep["beta"]["verification"]["equal"] == true);
    const Json bad = run_analysis(Json::parse(R"({"pipeline":["beta"],"beta":{"t":"2/3"}})"));
    CHECK(bad["beta"]["is_beta_number"] == false);
    CHECK(bad["beta"]["failure_index"] == 2);

    const Json w = run_analysis(Json::parse(R"({"system":{"kind":"baker"},"pipeline":["witness"],
        "hole":{"rects":[{"x":["1/4","1/2"],"y":["1/4","3/4"]}]}})"));
    CHECK(w["witness"]["kind"] == "CornerPigeonhole");
    CHECK(w["witness"]["revalidated"] == true);
}

TEST_CASE("genericity report JSON is stable") {
    const auto a = to_json(sample_rectangle_genericity(5, 6, 4, {2, 4})).dump();
    const auto b = to_json(sample_rectangle_genericity(5, 6, 4, {2, 4})).dump();
    CHECK(a == b);
    const Json j = Json::parse(a);
    CHECK(j["fractions"]["4"] == "1");
    CHECK(j["details"].size() == 6);
}
