#pragma once

// Orthogonal bi-invariant complex structures: verification, enumeration via
// the irreducible decomposition, Hermitian forms, complexification and the
// identities relating a complex structure to the complexified algebra.

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "metriclie/decompose.hpp"

namespace metriclie {

struct ComplexCertificate {
    Residual square;         // J² + I
    Residual biinvariance;   // J[X,Y] - [JX,Y]
    Residual skew;           // GJ + JᵀG
    bool passes() const { return square.vanishes && biinvariance.vanishes && skew.vanishes; }
};

template <typename F>
struct ComplexStructure {
    Matrix<F> j;
    ComplexCertificate certificate;
    std::vector<int> signs;  // ±1 per irreducible factor, relative to the canonical J_1..J_k
    Backend backend = FieldTraits<F>::backend;
};

template <typename F>
ComplexCertificate verify_complex_structure(const MetricLieAlgebra<F>& a, const Matrix<F>& j) {
    const std::size_t n = a.dim();
    if (j.rows() != n || j.cols() != n) throw DimensionMismatch("complex structure does not match the algebra dimension");
    ComplexCertificate c;
    c.square = Residual::of(Matrix<F>(j * j + Matrix<F>::identity(n)));
    c.biinvariance = centroid_residual(a.algebra(), j);
    c.skew = symmetry_residual(a.gram(), j, true);
    return c;
}

namespace detail {

template <typename F>
void require_complex_structure(const MetricLieAlgebra<F>& a, const Matrix<F>& j) {
    auto c = verify_complex_structure(a, j);
    if (!c.passes())
        throw InvalidComplexStructure("not an orthogonal bi-invariant complex structure (J²+I " +
                                      format_double(c.square.max_abs) + ", bi-invariance " +
                                      format_double(c.biinvariance.max_abs) + ", skewness " +
                                      format_double(c.skew.max_abs) + ")");
}

/// The canonical J of one irreducible factor, in the factor's coordinates, or
/// nothing when its skew centroid is trivial.
template <typename F>
std::optional<Matrix<F>> factor_structure(const MetricLieAlgebra<F>& induced) {
    auto skew = skew_centroid(induced);
    if (skew.dim() == 0) return std::nullopt;
    if (skew.dim() >= 2)
        throw InternalAssertionFailure("irreducible factor '" + induced.name() + "' of dimension " +
                                       std::to_string(induced.dim()) + " has a skew centroid of dimension " +
                                       std::to_string(skew.dim()));
    const auto& k = skew.basis().front();
    const std::size_t n = induced.dim();
    Matrix<F> sq = k * k;
    F lambda = sq(0, 0);
    if (!Matrix<F>(sq - lambda * Matrix<F>::identity(n)).is_zero())
        throw InternalAssertionFailure("square of the skew centroid generator is not scalar");
    bool negative;
    if constexpr (is_exact_v<F>)
        negative = sgn(lambda) < 0;
    else
        negative = lambda < -numeric_tolerance();
    if (!negative) throw InternalAssertionFailure("square of the skew centroid generator is not negative");
    if constexpr (is_exact_v<F>) {
        auto root = rational_sqrt(Rational(-lambda));
        if (!root) throw NumericFallbackRequired("normalizing factor of J is irrational");
        return k * Rational(Rational(1) / *root);
    } else {
        return k * (1.0 / std::sqrt(-lambda));
    }
}

}  // namespace detail

/// Every orthogonal bi-invariant complex structure: ±J_1 ⊕ … ⊕ ±J_k over
/// the irreducible factors, or none when some factor carries no J. Ordered by
/// sign vector, '+' before '-', first factor most significant.
template <typename F>
std::vector<ComplexStructure<F>> enumerate_complex_structures(const MetricLieAlgebra<F>& a, const Decomposition<F>& d) {
    const std::size_t n = a.dim();
    const std::size_t k = d.k();
    if (k == 0 || n % 2 != 0) return {};
    std::vector<Matrix<F>> lifted;
    for (const auto& f : d.factors) {
        auto local = detail::factor_structure(f.induced);
        if (!local) return {};
        lifted.push_back(f.carrier.basis_matrix() * (*local) * f.carrier.coordinate_map() * f.projection);
    }
    if (k >= 8 * sizeof(std::size_t) - 1) throw InvalidArgument("too many factors to enumerate");
    std::vector<ComplexStructure<F>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        ComplexStructure<F> cs;
        cs.j = Matrix<F>(n, n);
        for (std::size_t f = 0; f < k; ++f) {
            bool minus = (mask >> (k - 1 - f)) & 1U;
            cs.signs.push_back(minus ? -1 : 1);
            if (minus)
                cs.j -= lifted[f];
            else
                cs.j += lifted[f];
        }
        cs.certificate = verify_complex_structure(a, cs.j);
        if (!cs.certificate.passes()) throw InternalAssertionFailure("assembled complex structure failed verification");
        out.push_back(std::move(cs));
    }
    return out;
}

template <typename F>
std::vector<ComplexStructure<F>> enumerate_complex_structures(const MetricLieAlgebra<F>& a,
                                                              const DecomposeOptions& opts = {}) {
    return enumerate_complex_structures(a, decompose(a, opts));
}

using AnyEnumeration = std::variant<std::vector<ComplexStructure<Rational>>, std::vector<ComplexStructure<double>>>;

/// Exact enumeration, rerun in float64 when a normalizer or a factor is
/// irrational.
inline AnyEnumeration enumerate_any(const MetricLieAlgebra<Rational>& a, const DecomposeOptions& opts = {}) {
    try {
        return enumerate_complex_structures(a, opts);
    } catch (const NumericFallbackRequired&) {
        return enumerate_complex_structures(a.cast<double>(), opts);
    }
}

/// Same, starting from a decomposition already computed for `a`.
inline AnyEnumeration enumerate_any(const MetricLieAlgebra<Rational>& a, const AnyDecomposition& d) {
    if (d.index() == 1) return enumerate_complex_structures(a.cast<double>(), std::get<1>(d));
    try {
        return enumerate_complex_structures(a, std::get<0>(d));
    } catch (const NumericFallbackRequired&) {
        return enumerate_complex_structures(a.cast<double>(), DecomposeOptions{.seed = std::get<0>(d).seed});
    }
}

inline std::size_t structure_count(const AnyEnumeration& e) {
    return std::visit([](const auto& v) { return v.size(); }, e);
}

/// Value of the Hermitian form (⟨u,v⟩ + i⟨u,Jv⟩)/2.
template <typename F>
struct HermitianValue {
    F re;
    F im;
};

namespace detail {
template <typename F>
HermitianValue<F> hermitian_unchecked(const MetricLieAlgebra<F>& a, const Matrix<F>& j, const Vector<F>& u,
                                      const Vector<F>& v) {
    return {F(a.inner(u, v) / 2), F(a.inner(u, j * v) / 2)};
}
}  // namespace detail

template <typename F>
HermitianValue<F> hermitian_form(const MetricLieAlgebra<F>& a, const Matrix<F>& j, const Vector<F>& u,
                                 const Vector<F>& v) {
    detail::require_complex_structure(a, j);
    return detail::hermitian_unchecked(a, j, u, v);
}

/// Real form of g ⊗ ℂ: coordinates (a, b) for a + i b, dimension 2n.
template <typename F>
struct ComplexifiedAlgebra {
    MetricLieAlgebra<F> real_form;
    Matrix<F> i_op;      // (a, b) -> (-b, a)
    Matrix<F> sigma_op;  // (a, b) -> (a, -b)
    std::size_t base_dim = 0;
};

template <typename F>
ComplexifiedAlgebra<F> complexify(const MetricLieAlgebra<F>& a) {
    const std::size_t n = a.dim();
    const auto& g = a.algebra();
    typename LieAlgebra<F>::Table t;
    for (const auto& [key, terms] : g.table()) {
        t[key] = terms;  // [e_i, e_j] = ([X_i,X_j], 0)
        std::vector<BracketTerm<F>> neg;
        for (const auto& term : terms) neg.push_back({term.k, F(-term.c)});
        t[{key.first + n, key.second + n}] = std::move(neg);  // [f_i, f_j] = (-[X_i,X_j], 0)
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            std::vector<BracketTerm<F>> terms;  // [e_i, f_j] = (0, [X_i,X_j])
            for (std::size_t k = 0; k < n; ++k)
                if (!is_zero(g.constant(i, j, k))) terms.push_back({n + k, g.constant(i, j, k)});
            if (!terms.empty()) t[{i, n + j}] = std::move(terms);
        }
    std::vector<std::string> labels = g.labels();
    for (const auto& l : g.labels()) labels.push_back("i" + l);
    ComplexifiedAlgebra<F> ac;
    ac.base_dim = n;
    ac.real_form = MetricLieAlgebra<F>(LieAlgebra<F>(2 * n, std::move(labels), std::move(t)),
                                       Metric<F>(block_diagonal(a.gram(), a.gram())), a.name() + "^C");
    ac.i_op = Matrix<F>(2 * n, 2 * n);
    ac.sigma_op = Matrix<F>(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        ac.i_op(r, n + r) = F(-1);
        ac.i_op(n + r, r) = F(1);
        ac.sigma_op(r, r) = F(1);
        ac.sigma_op(n + r, n + r) = F(-1);
    }
    return ac;
}

/// The Hermitian extension ⟨Y, Z⟩^ℂ of the metric to g ⊗ ℂ.
template <typename F>
HermitianValue<F> complex_inner(const ComplexifiedAlgebra<F>& ac, const Vector<F>& u, const Vector<F>& v) {
    const std::size_t n = ac.base_dim;
    if (u.size() != 2 * n || v.size() != 2 * n) throw DimensionMismatch("vectors do not live in the complexification");
    Vector<F> a(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n)), b(u.begin() + static_cast<std::ptrdiff_t>(n), u.end());
    Vector<F> c(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)), d(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
    Matrix<F> g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = ac.real_form.gram()(i, j);
    return {F(bilinear(g, a, c) + bilinear(g, b, d)), F(bilinear(g, b, c) - bilinear(g, a, d))};
}

/// f^ℂ acting on (a, b) as (f a, f b).
template <typename F>
Matrix<F> extend_operator(const ComplexifiedAlgebra<F>& ac, const Matrix<F>& f) {
    if (f.rows() != ac.base_dim || f.cols() != ac.base_dim)
        throw DimensionMismatch("operator does not act on the original algebra");
    return block_diagonal(f, f);
}

/// The ±i eigenspaces of J^ℂ: images of (I ∓ i_op J^ℂ)/2.
template <typename F>
std::pair<Subspace<F>, Subspace<F>> eigensplit(const MetricLieAlgebra<F>& a, const Matrix<F>& j) {
    detail::require_complex_structure(a, j);
    auto ac = complexify(a);
    Matrix<F> ijc = ac.i_op * extend_operator(ac, j);
    auto id = Matrix<F>::identity(2 * a.dim());
    F half = F(1) / F(2);
    return {Subspace<F>::image(Matrix<F>(id - ijc) * half), Subspace<F>::image(Matrix<F>(id + ijc) * half)};
}

struct DoublingCertificate {
    Residual bracket;        // Φ[u,v] - [Φu, Φv]
    Residual intertwining;   // Φ i_op - (J ⊕ -J) Φ
    Residual hermitian;      // ⟨u,v⟩^ℂ - (h_J ⊕ h_{-J})(Φu, Φv)
    Residual embedding;      // h_J(X,Y) + h_{-J}(X,Y) - ⟨X,Y⟩ on the diagonal copy φ(X) = (X,X)
    std::size_t rank = 0;
    std::size_t expected_rank = 0;
    bool passes() const {
        return bracket.vanishes && intertwining.vanishes && hermitian.vanishes && embedding.vanishes &&
               rank == expected_rank;
    }
};

/// Φ(a, b) = (a + J b, a - J b) from g ⊗ ℂ onto (g, J) ⊕ (g, -J).
template <typename F>
Matrix<F> doubling_map(const Matrix<F>& j) {
    const std::size_t n = j.rows();
    Matrix<F> phi(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        phi(r, r) = F(1);
        phi(n + r, r) = F(1);
        for (std::size_t c = 0; c < n; ++c) {
            phi(r, n + c) = j(r, c);
            phi(n + r, n + c) = -j(r, c);
        }
    }
    return phi;
}

template <typename F>
DoublingCertificate verify_doubling_isometry(const MetricLieAlgebra<F>& a, const Matrix<F>& j) {
    detail::require_complex_structure(a, j);
    const std::size_t n = a.dim();
    auto ac = complexify(a);
    auto target = direct_sum(a, a);
    Matrix<F> phi = doubling_map(j);
    Matrix<F> jt = block_diagonal(j, Matrix<F>(-j));
    Matrix<F> neg_j = -j;

    DoublingCertificate c;
    c.expected_rank = 2 * n;
    c.rank = rank(phi);
    c.intertwining = Residual::of(Matrix<F>(phi * ac.i_op - jt * phi));

    auto half = [&](const Vector<F>& w, bool second) {
        return Vector<F>(w.begin() + static_cast<std::ptrdiff_t>(second ? n : 0),
                         w.begin() + static_cast<std::ptrdiff_t>(second ? 2 * n : n));
    };
    for (std::size_t p = 0; p < 2 * n; ++p) {
        auto up = unit_vector<F>(2 * n, p);
        auto pu = phi * up;
        for (std::size_t q = 0; q < 2 * n; ++q) {
            auto uq = unit_vector<F>(2 * n, q);
            auto pv = phi * uq;
            if (q > p) {
                auto lhs = phi * ac.real_form.bracket(up, uq);
                auto rhs = target.bracket(pu, pv);
                c.bracket.merge(Residual::of(Vector<F>(lhs - rhs)));
            }
            auto h = complex_inner(ac, up, uq);
            auto h1 = detail::hermitian_unchecked(a, j, half(pu, false), half(pv, false));
            auto h2 = detail::hermitian_unchecked(a, neg_j, half(pu, true), half(pv, true));
            c.hermitian.merge(Residual::of(Vector<F>{F(h.re - h1.re - h2.re), F(h.im - h1.im - h2.im)}));
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto ex = unit_vector<F>(n, x), ey = unit_vector<F>(n, y);
            auto h1 = detail::hermitian_unchecked(a, j, ex, ey);
            auto h2 = detail::hermitian_unchecked(a, neg_j, ex, ey);
            c.embedding.merge(Residual::of(Vector<F>{F(h1.re + h2.re - a.inner(ex, ey)), F(h1.im + h2.im)}));
        }
    return c;
}

struct CommuteReport {
    bool commutes = false;
    Residual commutator;             // J1 J2 - J2 J1
    bool image_in_center = false;    // (J1 J2 - J2 J1)(g) ⊆ Z(g)
    std::size_t image_dim = 0;
};

/// Requires J² = -I and bi-invariance of both maps; skewness is not needed.
template <typename F>
CommuteReport commute_check(const MetricLieAlgebra<F>& a, const Matrix<F>& j1, const Matrix<F>& j2) {
    for (const auto* j : {&j1, &j2}) {
        auto c = verify_complex_structure(a, *j);
        if (!c.square.vanishes || !c.biinvariance.vanishes)
            throw InvalidComplexStructure("commute_check needs bi-invariant maps with J² = -I");
    }
    CommuteReport r;
    Matrix<F> comm = j1 * j2 - j2 * j1;
    r.commutator = Residual::of(comm);
    r.commutes = r.commutator.vanishes;
    auto image = Subspace<F>::image(comm);
    r.image_dim = image.dim();
    r.image_in_center = center(a).contains(image);
    return r;
}

/// The family J_λ on abelian ℝ⁴, orthogonal for the standard inner product.
template <typename F>
Matrix<F> jlambda(const F& lambda) {
    F norm;
    if constexpr (is_exact_v<F>) {
        auto root = rational_sqrt(Rational(lambda * lambda + 1));
        if (!root) throw IrrationalNormalizer("sqrt(" + Rational(lambda * lambda + 1).get_str() + ") is irrational");
        norm = Rational(1) / *root;
    } else {
        norm = 1.0 / std::sqrt(lambda * lambda + 1.0);
    }
    F l = lambda;
    F z(0), o(1);
    Matrix<F> m{{z, o, F(-l), z}, {F(-o), z, z, l}, {l, z, z, o}, {z, F(-l), F(-o), z}};
    return m * norm;
}

}  // namespace metriclie
