#include <gtest/gtest.h>

#include "support.hpp"

using namespace metriclie;
using io::json;

namespace {

json bracket(std::size_t i, std::size_t j, std::size_t k, const char* c) {
    return {{"i", i}, {"j", j}, {"terms", json::array({{{"k", k}, {"c", c}}})}};
}

}  // namespace

TEST(RoundTrip, EveryExampleIsReproducedExactly) {
    for (const auto& key : example_keys()) {
        auto doc = example_document(key);
        auto text = io::render_document(doc).dump();
        auto back = io::parse_document_text(text);
        EXPECT_EQ(back.algebra, doc.algebra) << key;
        EXPECT_EQ(back.gram, doc.gram) << key;
        EXPECT_EQ(back.j.has_value(), doc.j.has_value()) << key;
        if (doc.j) EXPECT_EQ(*back.j, *doc.j) << key;
        EXPECT_EQ(io::render_document(back).dump(), text) << key;
    }
}

TEST(RoundTrip, RandomMetricsSurvive) {
    auto a = support::example("h3c2");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto b = a.with_metric(random_gram(a.dim(), seed));
        auto back = io::parse_algebra(io::render_algebra(b));
        EXPECT_EQ(back.gram(), b.gram());
        EXPECT_EQ(back.algebra(), b.algebra());
    }
}

TEST(Catalog, EveryEntryValidates) {
    for (const auto& entry : examples()) {
        EXPECT_NO_THROW(entry.build().validated()) << entry.key;
        EXPECT_FALSE(entry.description.empty());
    }
    EXPECT_THROW(find_example("h4"), UnknownExample);
}

TEST(Catalog, NonCommutingExampleTable) {
    auto doc = io::render_document(example_document("ex48"));
    json expected = json::array({bracket(1, 3, 5, "1"), bracket(1, 4, 6, "1"), bracket(2, 3, 6, "1"),
                                 bracket(2, 4, 5, "-1")});
    EXPECT_EQ(doc["brackets"], expected);
}

TEST(Catalog, IrreducibleTwoHeisenbergMetric) {
    auto g = example_document("h3h3-paper-metric").gram;
    // Z1, Z2 at indices 4, 5
    EXPECT_EQ(g(4, 4), 1);
    EXPECT_EQ(g(4, 5), 1);
    EXPECT_EQ(g(5, 4), 1);
    EXPECT_EQ(g(5, 5), 2);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(g(i, i), 1);
}

TEST(Catalog, ComplexHeisenbergTable) {
    auto a = support::example("h3c");
    auto e = [](std::size_t i) { return unit_vector<Rational>(6, i); };
    EXPECT_EQ(a.bracket(e(0), e(2)), e(4));
    EXPECT_EQ(a.bracket(e(0), e(3)), e(5));
    EXPECT_EQ(a.bracket(e(1), e(2)), e(5));
    EXPECT_EQ(a.bracket(e(1), e(3)), Vector<Rational>({0, 0, 0, 0, -1, 0}));
    EXPECT_EQ(support::example("h3c-perturbed").gram()(4, 5), Rational(1, 2));
}

TEST(Parse, ScalarForms) {
    json doc = {{"schema", 1},
                {"dim", 3},
                {"brackets", json::array({{{"i", 1}, {"j", 2}, {"terms", json::array({{{"k", 3}, {"c", 0.5}}})}}})},
                {"gram", json::array({json::array({"2", 0, 0}), json::array({0, "1.25", 0}), json::array({0, 0, "3/6"})})}};
    auto a = io::parse_algebra(doc);
    EXPECT_EQ(a.algebra().constant(0, 1, 2), Rational(1, 2));
    EXPECT_EQ(a.gram()(1, 1), Rational(5, 4));
    EXPECT_EQ(a.gram()(2, 2), Rational(1, 2));
}

TEST(Parse, NullStructureMeansAbsent) {
    json doc = {{"dim", 3}, {"brackets", json::array({bracket(1, 2, 3, "1")})}, {"j", nullptr}};
    EXPECT_FALSE(io::parse_document(doc).j.has_value());
}

TEST(Parse, StructuralErrors) {
    auto base = [] { return json{{"schema", 1}, {"dim", 3}, {"brackets", json::array({bracket(1, 2, 3, "1")})}}; };
    auto with = [&](auto f) {
        auto d = base();
        f(d);
        return d;
    };
    EXPECT_THROW(io::parse_document(with([](json& d) { d["schema"] = 2; })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["dim"] = -1; })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["labels"] = {"X"}; })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["brackets"][0]["k"] = 1; d["brackets"][0]["i"] = 4; })),
                 ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["brackets"].push_back(bracket(1, 2, 3, "2")); })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["brackets"][0]["terms"][0]["c"] = "x"; })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["gram"] = json::array({json::array({1})}); })), ParseError);
    EXPECT_THROW(io::parse_document(with([](json& d) { d["j"] = "identity"; })), ParseError);
    EXPECT_THROW(io::parse_document_text("{\"dim\": 3"), ParseError);
    EXPECT_THROW(io::parse_document(json::array()), ParseError);
    EXPECT_THROW(io::load_document("/nonexistent/path.alg"), ParseError);
}

TEST(Parse, AxiomErrorsAreNotParseErrors) {
    json doc = {{"dim", 2}, {"brackets", json::array()}, {"gram", json::array({json::array({1, 2}), json::array({2, 1})})}};
    auto parsed = io::parse_document(doc);
    EXPECT_THROW(parsed.validated(), MetricNotPositiveDefinite);
}

TEST(Reports, DecompositionDocument) {
    auto a = support::example("h3h3");
    auto out = io::decomposition_to_json(a, decompose(a));
    EXPECT_EQ(out["k"], 2);
    EXPECT_EQ(out["factors"].size(), 2u);
    EXPECT_EQ(out["factors"][0]["carrier"]["dim"], 3);
    EXPECT_TRUE(out["certificate"]["passes"].get<bool>());
    EXPECT_EQ(out["factors"][1]["projection"][1][1], "1");
}

TEST(Reports, EnumerationDocument) {
    auto a = support::example("h3c2");
    auto out = io::enumeration_to_json(enumerate_complex_structures(a));
    EXPECT_EQ(out["count"], 4);
    EXPECT_EQ(out["structures"][1]["signs"], "+-");
    EXPECT_EQ(out["structures"][0]["j"].size(), 12u);
}

TEST(Reports, ScanDocumentRecordsOptions) {
    auto r = metric_scan(support::example("h3c").algebra(), {.trials = 3, .seed = 5});
    auto out = io::scan_to_json(r);
    EXPECT_EQ(out["trials"].size(), 3u);
    EXPECT_EQ(out["gram_options"]["epsilon"], "1/10");
    EXPECT_EQ(out["gram_options"]["spread"], 5);
    EXPECT_EQ(io::scan_to_json(metric_scan(support::example("h3c").algebra(), {.trials = 3, .seed = 5})), out);
}
