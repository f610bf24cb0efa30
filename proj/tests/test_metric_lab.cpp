#include <gtest/gtest.h>

#include "support.hpp"

using namespace metriclie;
using support::example;

namespace {

BlockSpec blocks(std::initializer_list<const char*> keys, std::uint64_t seed = 0) {
    BlockSpec spec;
    spec.seed = seed;
    for (const auto* key : keys) {
        auto doc = example_document(key);
        spec.blocks.push_back(doc.validated());
        spec.structures.push_back(doc.j);
    }
    return spec;
}

std::size_t factor_count(const MetricLieAlgebra<Rational>& a) {
    return std::visit([](const auto& d) { return d.k(); }, decompose_any(a));
}

}  // namespace

TEST(RandomGram, Reproducible) {
    EXPECT_EQ(random_gram(6, 42).gram(), random_gram(6, 42).gram());
    EXPECT_NE(random_gram(6, 42).gram(), random_gram(6, 43).gram());
    EXPECT_THROW(random_gram(0, 1), InvalidArgument);
}

TEST(RandomGram, PositiveDefinite) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_gram(5, seed, {.spread = 9}).gram();
        EXPECT_EQ(g, g.transpose());
        for (const auto& m : leading_principal_minors(g)) EXPECT_GT(m, 0);
    }
}

TEST(RandomGram, CentersOfTwoHeisenbergsNeverOrthogonal) {
    // Z1 and Z2 sit at indices 2 and 5
    for (std::uint64_t seed = 0; seed < 100; ++seed) EXPECT_NE(random_gram(6, seed).gram()(2, 5), 0) << seed;
}

TEST(Irreducible, TwoHeisenbergs) {
    auto c = make_irreducible_metric(blocks({"h3", "h3"}, 7));
    EXPECT_EQ(c.factors, 1u);
    EXPECT_EQ(factor_count(c.algebra), 1u);
    EXPECT_LE(c.attempts, 20u);
    EXPECT_NE(c.algebra.gram()(2, 5), 0);
}

TEST(Irreducible, SingleHeisenberg) { EXPECT_EQ(make_irreducible_metric(blocks({"h3"})).factors, 1u); }

TEST(Irreducible, ComplexHeisenbergPairAdmitsAtMostTwo) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto c = make_irreducible_metric(blocks({"h3c", "h3c"}, seed));
        EXPECT_EQ(factor_count(c.algebra), 1u);
        auto count = structure_count(enumerate_any(c.algebra));
        EXPECT_TRUE(count == 0 || count == 2) << count;
    }
}

TEST(Irreducible, Refusals) {
    EXPECT_THROW(make_irreducible_metric(blocks({"h3", "abelian2n"})), AbelianBlock);
    EXPECT_THROW(make_irreducible_metric(BlockSpec{}), InvalidArgument);
    EXPECT_THROW(make_irreducible_metric(blocks({"h3", "h3"}), {.max_retries = 0}), GenericityFailure);
}

TEST(FactorCount, TwoHeisenbergsKeptApart) {
    auto c = make_metric_with_factor_count(blocks({"h3", "h3"}), 2);
    EXPECT_EQ(c.factors, 2u);
    const auto& g = c.algebra.gram();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 3; j < 6; ++j) EXPECT_EQ(g(i, j), 0);
}

TEST(FactorCount, TwoHeisenbergsGlued) {
    auto c = make_metric_with_factor_count(blocks({"h3", "h3"}), 1);
    EXPECT_EQ(factor_count(c.algebra), 1u);
}

TEST(FactorCount, ThreeHeisenbergsEveryCount) {
    auto spec = blocks({"h3", "h3", "h3"}, 3);
    for (std::size_t l = 1; l <= 3; ++l) EXPECT_EQ(factor_count(make_metric_with_factor_count(spec, l).algebra), l);
    EXPECT_THROW(make_metric_with_factor_count(spec, 0), InvalidL);
    EXPECT_THROW(make_metric_with_factor_count(spec, 4), InvalidL);
}

TEST(JCount, ComplexHeisenbergPair) {
    auto spec = blocks({"h3c", "h3c"}, 5);
    auto two = jcount_experiment(spec, 2);
    EXPECT_EQ(two.count, 4u);
    EXPECT_EQ(two.k, 2u);
    auto c = support::compare_with_oracle(two.algebra);
    EXPECT_TRUE(c.equal) << c.detail;
    auto one = jcount_experiment(spec, 1);
    EXPECT_EQ(one.count, 2u);
    EXPECT_EQ(one.factors, 1u);
}

TEST(JCount, SingleBlock) { EXPECT_EQ(jcount_experiment(blocks({"h3c"}), 1).count, 2u); }

TEST(JCount, Refusals) {
    EXPECT_THROW(jcount_experiment(blocks({"h3c", "h3"}), 1), NoComplexStructureOnBlock);
    auto spec = blocks({"h3c"});
    spec.structures[0] = Matrix<Rational>::identity(6);
    EXPECT_THROW(jcount_experiment(spec, 1), NoComplexStructureOnBlock);
    EXPECT_THROW(jcount_experiment(blocks({"h3c"}), 2), InvalidL);
}

TEST(Scan, ComplexHeisenbergNeverExceedsTwo) {
    auto r = metric_scan(example("h3c").algebra(), {.trials = 50, .seed = 1});
    ASSERT_EQ(r.trials.size(), 50u);
    for (const auto& [count, n] : r.histogram) EXPECT_TRUE(count == 0 || count == 2) << count;
    for (const auto& t : r.trials) EXPECT_EQ(t.k, 1u);
}

TEST(Scan, HermitizedMetricsKeepTheStructure) {
    auto doc = example_document("h3c");
    auto r = metric_scan(doc.algebra, {.trials = 10, .seed = 2, .hermitian_for = doc.j});
    EXPECT_EQ(r.histogram[2], 10u);
}

TEST(Scan, PerturbedMetricFirst) {
    auto doc = example_document("h3c-perturbed");
    auto r = metric_scan(doc.algebra, {.trials = 3, .seed = 4, .initial_grams = {doc.gram}});
    EXPECT_EQ(r.trials.front().jcount, 0u);
    EXPECT_EQ(r.trials.front().gram_hash, gram_hash(doc.gram));
}

TEST(Scan, OddDimensionAndAbelian) {
    auto r = metric_scan(example("h3").algebra(), {.trials = 10});
    EXPECT_EQ(r.histogram[0], 10u);
    auto a = metric_scan(example("abelian2n").algebra(), {.trials = 4});
    EXPECT_EQ(a.skipped, 4u);
    EXPECT_TRUE(a.trials.empty());
}

TEST(Scan, Deterministic) {
    auto g = example("h3c2").algebra();
    auto a = metric_scan(g, {.trials = 5, .seed = 9});
    auto b = metric_scan(g, {.trials = 5, .seed = 9});
    ASSERT_EQ(a.trials.size(), b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        EXPECT_EQ(a.trials[i].gram_hash, b.trials[i].gram_hash);
        EXPECT_EQ(a.trials[i].jcount, b.trials[i].jcount);
    }
}
