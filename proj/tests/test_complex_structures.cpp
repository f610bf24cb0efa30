#include <gtest/gtest.h>

#include "support.hpp"

using namespace metriclie;
using support::example;

namespace {

Vector<Rational> e(std::size_t n, std::size_t i) { return unit_vector<Rational>(n, i); }

Matrix<Rational> standard_j() { return *example_document("h3c").j; }

Vector<Rational> draw(std::mt19937_64& rng, std::size_t n) {
    Vector<Rational> v(n);
    for (auto& x : v) {
        x = Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
        x.canonicalize();
    }
    return v;
}

}  // namespace

TEST(Verify, StandardStructureOnComplexHeisenberg) {
    auto c = verify_complex_structure(example("h3c"), standard_j());
    EXPECT_TRUE(c.passes());
    EXPECT_EQ(c.square.max_abs, 0.0);
}

TEST(Verify, NonCommutingExampleFirstStructure) {
    auto [j1, j2] = ex48_structures();
    auto a = example("ex48");
    for (const auto& j : {j1, j2}) {
        auto c = verify_complex_structure(a, j);
        EXPECT_TRUE(c.square.vanishes);
        EXPECT_TRUE(c.biinvariance.vanishes);
    }
    // X1 ↦ X2, X6 ↦ -X5 for the first
    EXPECT_EQ(j1 * e(6, 0), e(6, 1));
    EXPECT_EQ(j1 * e(6, 5), Vector<Rational>({0, 0, 0, 0, -1, 0}));
}

TEST(Verify, IdentityIsNotAComplexStructure) {
    auto c = verify_complex_structure(example("h3c"), Matrix<Rational>::identity(6));
    EXPECT_FALSE(c.square.vanishes);
    EXPECT_FALSE(c.passes());
}

TEST(Enumerate, ComplexHeisenbergHasTwo) {
    auto list = enumerate_complex_structures(example("h3c"));
    ASSERT_EQ(list.size(), 2u);
    auto j = standard_j();
    EXPECT_TRUE((list[0].j == j && list[1].j == -j) || (list[0].j == -j && list[1].j == j));
    EXPECT_EQ(list[0].signs, std::vector<int>{1});
    EXPECT_EQ(list[1].signs, std::vector<int>{-1});
}

TEST(Enumerate, PerturbedMetricHasNone) { EXPECT_TRUE(enumerate_complex_structures(example("h3c-perturbed")).empty()); }

TEST(Enumerate, TwoCopiesHaveFour) {
    auto list = enumerate_complex_structures(example("h3c2"));
    ASSERT_EQ(list.size(), 4u);
    std::vector<std::vector<int>> signs;
    for (const auto& cs : list) signs.push_back(cs.signs);
    EXPECT_EQ(signs, (std::vector<std::vector<int>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
}

TEST(Enumerate, OddDimensionAndRealFormsWithoutJ) {
    EXPECT_TRUE(enumerate_complex_structures(example("h3")).empty());
    EXPECT_TRUE(enumerate_complex_structures(example("h3h3")).empty());
    EXPECT_EQ(enumerate_complex_structures(example("sl2c-real")).size(), 2u);
}

TEST(Enumerate, RefusesAbelian) { EXPECT_THROW(enumerate_complex_structures(example("abelian2n")), AbelianFactorPresent); }

TEST(Enumerate, IrrationalNormalizerUsesTheNumericBackend) {
    auto a = example("h3c-root2");
    EXPECT_THROW(enumerate_complex_structures(a), NumericFallbackRequired);
    auto any = enumerate_any(a);
    ASSERT_EQ(any.index(), 1u);
    const auto& list = std::get<1>(any);
    ASSERT_EQ(list.size(), 2u);
    for (const auto& cs : list) {
        EXPECT_TRUE(cs.certificate.passes());
        EXPECT_EQ(cs.backend, Backend::numeric);
    }
    EXPECT_NEAR(std::abs(list[0].j(1, 0)), std::sqrt(0.5), 1e-12);
}

TEST(Enumerate, MatchesOracleOnBundledMetrics) {
    for (const auto& key : {"h3c", "h3c-perturbed", "h3c2", "ex48", "sl2c-real", "h3h3"}) {
        auto c = support::compare_with_oracle(example(key));
        EXPECT_TRUE(c.equal) << key << ": " << c.detail;
    }
}

TEST(Hermitian, BasisValues) {
    auto a = example("h3c");
    auto j = standard_j();
    auto h11 = hermitian_form(a, j, e(6, 0), e(6, 0));
    EXPECT_EQ(h11.re, Rational(1, 2));
    EXPECT_EQ(h11.im, 0);
    auto h12 = hermitian_form(a, j, e(6, 0), e(6, 1));
    EXPECT_EQ(h12.re, 0);
    EXPECT_EQ(h12.im, Rational(-1, 2));
    EXPECT_THROW(hermitian_form(a, Matrix<Rational>::identity(6), e(6, 0), e(6, 0)), InvalidComplexStructure);
}

TEST(Hermitian, SesquilinearAndPositive) {
    auto a = example("h3c");
    auto j = standard_j();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto u = draw(rng, 6), v = draw(rng, 6);
        auto lhs = hermitian_form(a, j, j * u, v);
        auto h = hermitian_form(a, j, u, v);
        EXPECT_EQ(lhs.re, -h.im);  // i (re + i im) = -im + i re
        EXPECT_EQ(lhs.im, h.re);
        auto hv = hermitian_form(a, j, v, u);
        EXPECT_EQ(h.re + hv.re, a.inner(u, v));  // ⟨u,v⟩ = h(u,v) + conj h(u,v), real part twice
        EXPECT_EQ(h.im, -hv.im);
        auto uu = hermitian_form(a, j, u, u);
        EXPECT_EQ(uu.im, 0);
        EXPECT_GE(uu.re, 0);
    }
}

TEST(Complexify, HeisenbergDoubling) {
    auto ac = complexify(example("h3"));
    EXPECT_EQ(ac.real_form.dim(), 6u);
    EXPECT_TRUE(check_jacobi(ac.real_form.algebra()).holds);
    EXPECT_EQ(ac.real_form.bracket(e(6, 0), e(6, 1)), e(6, 2));
    auto h = complex_inner(ac, e(6, 0), e(6, 0));
    EXPECT_EQ(h.re, 1);
    EXPECT_EQ(h.im, 0);
    // (0, X1) and (0, X2): [iX1, iX2] = -X3
    EXPECT_EQ(ac.real_form.bracket(e(6, 3), e(6, 4)), Vector<Rational>({0, 0, -1, 0, 0, 0}));
}

TEST(Complexify, OperatorInvariants) {
    auto ac = complexify(example("ex48"));
    const auto id = Matrix<Rational>::identity(12);
    EXPECT_EQ(ac.i_op * ac.i_op, -id);
    EXPECT_EQ(ac.sigma_op * ac.sigma_op, id);
    EXPECT_EQ(ac.sigma_op * ac.i_op, -(ac.i_op * ac.sigma_op));
    EXPECT_TRUE(centroid_residual(ac.real_form.algebra(), ac.i_op).vanishes);
}

TEST(Extend, CommutesWithConjugationAndI) {
    auto a = example("h3c");
    auto ac = complexify(a);
    EXPECT_EQ(extend_operator(ac, Matrix<Rational>::identity(6)), Matrix<Rational>::identity(12));
    auto jc = extend_operator(ac, standard_j());
    EXPECT_EQ(jc * ac.sigma_op, ac.sigma_op * jc);
    EXPECT_EQ(jc * ac.i_op, ac.i_op * jc);
    EXPECT_EQ(jc * jc, -Matrix<Rational>::identity(12));
    EXPECT_THROW(extend_operator(ac, Matrix<Rational>::identity(3)), DimensionMismatch);
}

TEST(Eigensplit, ComplexHeisenberg) {
    auto a = example("h3c");
    auto ac = complexify(a);
    auto [plus, minus] = eigensplit(a, standard_j());
    EXPECT_EQ(plus.dim(), 6u);
    EXPECT_EQ(minus.dim(), 6u);
    EXPECT_TRUE(is_ideal(ac.real_form.algebra(), plus));
    EXPECT_TRUE(is_ideal(ac.real_form.algebra(), minus));
    EXPECT_EQ(plus.mapped(ac.sigma_op), minus);
    for (const auto& u : plus.basis())
        for (const auto& v : minus.basis()) {
            auto h = complex_inner(ac, u, v);
            EXPECT_EQ(h.re, 0);
            EXPECT_EQ(h.im, 0);
        }
}

TEST(Doubling, ComplexHeisenbergPasses) {
    auto c = verify_doubling_isometry(example("h3c"), standard_j());
    EXPECT_TRUE(c.passes());
    EXPECT_EQ(c.bracket.max_abs, 0.0);
    EXPECT_EQ(c.hermitian.max_abs, 0.0);
    EXPECT_EQ(c.embedding.max_abs, 0.0);
    EXPECT_EQ(c.rank, 12u);
    EXPECT_THROW(verify_doubling_isometry(example("h3c-perturbed"), standard_j()), InvalidComplexStructure);
}

TEST(Doubling, ComplexificationHasTwiceTheFactors) {
    for (const auto& key : {"h3c", "h3c2", "sl2c-real"}) {
        auto a = example(key);
        auto k = decompose(a).k();
        ASSERT_FALSE(enumerate_complex_structures(a).empty());
        EXPECT_EQ(decompose(complexify(a).real_form).k(), 2 * k) << key;
    }
}

TEST(Commute, NonCommutingPair) {
    auto a = example("ex48");
    auto [j1, j2] = ex48_structures();
    auto r = commute_check(a, j1, j2);
    EXPECT_FALSE(r.commutes);
    EXPECT_TRUE(r.image_in_center);
    EXPECT_EQ(j1 * j2 * e(6, 0), Vector<Rational>({-1, 0, 0, 0, -1, 0}));
    EXPECT_EQ(j2 * j1 * e(6, 0), Vector<Rational>({-1, 0, 0, 0, 1, 0}));
    EXPECT_TRUE(Subspace<Rational>::span(6, {e(6, 4), e(6, 5)}).contains(Subspace<Rational>::image(j1 * j2 - j2 * j1)));
}

TEST(Commute, EnumeratedStructuresCommute) {
    auto a = example("h3c2");
    auto list = enumerate_complex_structures(a);
    for (const auto& x : list)
        for (const auto& y : list) EXPECT_TRUE(commute_check(a, x.j, y.j).commutes);
}

TEST(JLambda, Family) {
    auto j0 = jlambda(Rational(0));
    EXPECT_EQ(j0 * j0, -Matrix<Rational>::identity(4));
    auto j = jlambda(Rational(3, 4));
    EXPECT_EQ(j * j, -Matrix<Rational>::identity(4));
    EXPECT_EQ(j(0, 1), Rational(4, 5));
    EXPECT_EQ(j(0, 2), Rational(-3, 5));
    EXPECT_THROW(jlambda(Rational(1)), IrrationalNormalizer);
    auto jn = jlambda(1.0);
    EXPECT_TRUE(Matrix<double>(jn * jn + Matrix<double>::identity(4)).is_zero());
}

TEST(JLambda, OrthogonalOnAbelianR4) {
    auto r4 = example("abelian2n");
    for (auto lambda : {Rational(0), Rational(3, 4), Rational(-5, 12), Rational(4, 3)}) {
        auto c = verify_complex_structure(r4, jlambda(lambda));
        EXPECT_TRUE(c.passes());
    }
    EXPECT_NE(jlambda(Rational(0)), jlambda(Rational(3, 4)));
}

TEST(Properties, EnumerationInvariants) {
    for (const auto& key : example_keys()) {
        for (const auto& a : support::metric_variants(key, 3)) {
            if (has_abelian_factor(a)) continue;
            auto d = decompose_any(a);
            auto e = enumerate_any(a);
            std::size_t k = std::visit([](const auto& x) { return x.k(); }, d);
            std::size_t count = structure_count(e);
            EXPECT_TRUE(count == 0 || count == (std::size_t{1} << k)) << key;
            if (d.index() != e.index()) continue;
            std::visit(
                [&](const auto& list) {
                    using F = std::decay_t<decltype(list.front().j(0, 0))>;
                    const auto& dec = std::get<Decomposition<F>>(d);
                    for (const auto& cs : list) {
                        bool negation = false;
                        for (const auto& other : list)
                            negation = negation || Matrix<F>(other.j + cs.j).is_zero();
                        EXPECT_TRUE(negation) << key;
                        for (const auto& f : dec.factors) EXPECT_EQ(f.carrier.mapped(cs.j), f.carrier) << key;
                    }
                },
                e);
        }
    }
}
