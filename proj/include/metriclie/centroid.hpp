#pragma once

// Centroid of a metric Lie algebra, its symmetric and skew parts, and
// orthogonal projections (idempotent symmetric centroid elements).

#include <deque>
#include <utility>
#include <vector>

#include "metriclie/lie_algebra.hpp"

namespace metriclie {

enum class OperatorCondition { centroid, symmetric_centroid, skew_centroid };

inline const char* to_string(OperatorCondition c) {
    switch (c) {
        case OperatorCondition::centroid: return "centroid";
        case OperatorCondition::symmetric_centroid: return "symmetric_centroid";
        case OperatorCondition::skew_centroid: return "skew_centroid";
    }
    return "?";
}

/// max over ordered basis pairs of |M[X_i,X_j] - [M X_i, X_j]|.
template <typename F>
Residual centroid_residual(const LieAlgebra<F>& g, const Matrix<F>& m) {
    const std::size_t n = g.dim();
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("operator does not match the algebra dimension");
    Residual r;
    // M[x, e_j] - [Mx, e_j] = (ad(e_j) M - M ad(e_j)) x
    for (std::size_t j = 0; j < n; ++j) {
        auto ad = g.ad(j);
        r.merge(Residual::of(Matrix<F>(ad * m - m * ad)));
    }
    return r;
}

/// G M - Mᵀ G (symmetric part test) or G M + Mᵀ G (skew part test).
template <typename F>
Residual symmetry_residual(const Matrix<F>& gram, const Matrix<F>& m, bool skew) {
    Matrix<F> lhs = gram * m;
    Matrix<F> rhs = m.transpose() * gram;
    return Residual::of(skew ? Matrix<F>(lhs + rhs) : Matrix<F>(lhs - rhs));
}

/// Basis of n x n operators cut out by one of the linear conditions above,
/// canonicalized by row-major vectorization and row reduction.
template <typename F>
class OperatorSubspace {
public:
    OperatorSubspace(std::size_t n, OperatorCondition condition, std::vector<Matrix<F>> basis)
        : n_(n), condition_(condition) {
        std::vector<Vector<F>> flat;
        for (auto& m : basis) flat.push_back(m.data());
        for (auto& v : canonical_row_basis(flat, n * n)) basis_.push_back(Matrix<F>::from_data(n, n, std::move(v)));
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    OperatorCondition condition() const { return condition_; }
    const std::vector<Matrix<F>>& basis() const { return basis_; }

    /// Σ t_i B_i
    Matrix<F> combination(const std::vector<F>& t) const {
        if (t.size() != basis_.size()) throw DimensionMismatch("coefficient count mismatch");
        Matrix<F> m(n_, n_);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == 0) continue;
            const auto& b = basis_[i].data();
            for (std::size_t k = 0; k < b.size(); ++k)
                if (b[k] != 0) m(k / n_, k % n_) += b[k] * t[i];
        }
        return m;
    }

    bool contains(const Matrix<F>& m) const {
        std::vector<Vector<F>> flat;
        for (const auto& b : basis_) flat.push_back(b.data());
        auto s = Subspace<F>::span(n_ * n_, flat);
        return s.contains(m.data());
    }

    /// Re-evaluates the defining condition on an operator.
    Residual residual(const MetricLieAlgebra<F>& a, const Matrix<F>& m) const {
        Residual r = centroid_residual(a.algebra(), m);
        if (condition_ == OperatorCondition::symmetric_centroid) r.merge(symmetry_residual(a.gram(), m, false));
        if (condition_ == OperatorCondition::skew_centroid) r.merge(symmetry_residual(a.gram(), m, true));
        return r;
    }

private:
    std::size_t n_;
    OperatorCondition condition_;
    std::vector<Matrix<F>> basis_;
};

/// All M with M[X_i,X_j] = [M X_i, X_j] for every ordered pair (i, j),
/// including i = j. Unknown M_{ab} sits at index a*n + b.
namespace detail {

template <typename F>
OperatorSubspace<F> solve_centroid(const LieAlgebra<F>& g) {
    const std::size_t n = g.dim();
    SparseSystem<F> sys(n * n);
    using Row = typename SparseSystem<F>::Row;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < n; ++a) {
                // sum_k c_ij^k M_ak - sum_b M_bi c_bj^a = 0
                Row row;
                for (std::size_t k = 0; k < n; ++k) {
                    const F& c = g.constant(i, j, k);
                    if (!is_zero(c)) row.emplace_back(static_cast<std::uint32_t>(a * n + k), c);
                }
                for (std::size_t b = 0; b < n; ++b) {
                    const F& c = g.constant(b, j, a);
                    if (!is_zero(c)) row.emplace_back(static_cast<std::uint32_t>(b * n + i), F(-c));
                }
                if (!row.empty()) sys.add_equation(std::move(row));
            }
    std::vector<Matrix<F>> basis;
    for (auto& v : sys.nullspace()) basis.push_back(Matrix<F>::from_data(n, n, std::move(v)));
    return OperatorSubspace<F>(n, OperatorCondition::centroid, std::move(basis));
}

}  // namespace detail

/// The centroid depends on the bracket alone; recent exact results are kept
/// per thread since callers revisit one algebra under many metrics.
template <typename F>
OperatorSubspace<F> centroid(const LieAlgebra<F>& g) {
    if constexpr (!is_exact_v<F>) return detail::solve_centroid(g);
    constexpr std::size_t slots = 4;
    thread_local std::deque<std::pair<LieAlgebra<F>, OperatorSubspace<F>>> recent;
    for (const auto& [alg, c] : recent)
        if (alg == g) return c;
    auto c = detail::solve_centroid(g);
    recent.emplace_front(g, c);
    if (recent.size() > slots) recent.pop_back();
    return c;
}

template <typename F>
OperatorSubspace<F> centroid(const MetricLieAlgebra<F>& a) {
    return centroid(a.algebra());
}

namespace detail {

template <typename F>
OperatorSubspace<F> centroid_part(const MetricLieAlgebra<F>& a, const OperatorSubspace<F>& full, bool skew) {
    const std::size_t n = a.dim();
    const std::size_t d = full.dim();
    // coefficients t with G(Σ t B) ∓ (Σ t B)ᵀ G = 0; the left side is
    // (skew-)symmetric, so the upper triangle carries every equation
    // The condition is homogeneous in G, so an exact Gram is cleared of denominators first.
    Matrix<F> gram = a.gram();
    if constexpr (is_exact_v<F>) {
        mpz_class den = 1;
        for (const auto& x : gram.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        gram *= F(den);
    }
    Matrix<F> sys(n * (n + 1) / 2, d);
    for (std::size_t l = 0; l < d; ++l) {
        const auto& b = full.basis()[l];
        Matrix<F> gb = gram * b;
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) sys(row++, l) = skew ? F(gb(i, j) + gb(j, i)) : F(gb(i, j) - gb(j, i));
    }
    std::vector<Matrix<F>> basis;
    for (const auto& t : nullspace(sys)) basis.push_back(full.combination(t));
    return OperatorSubspace<F>(n, skew ? OperatorCondition::skew_centroid : OperatorCondition::symmetric_centroid,
                               std::move(basis));
}

}  // namespace detail

/// Centroid elements with G M = Mᵀ G.
template <typename F>
OperatorSubspace<F> symmetric_centroid(const MetricLieAlgebra<F>& a) {
    return detail::centroid_part(a, centroid(a), false);
}

/// Centroid elements with G M = -Mᵀ G.
template <typename F>
OperatorSubspace<F> skew_centroid(const MetricLieAlgebra<F>& a) {
    return detail::centroid_part(a, centroid(a), true);
}

struct ProjectionCertificate {
    Residual idempotence;  // P∘P - P
    Residual centroid;     // P[X,Y] - [PX,Y]
    Residual symmetry;     // GP - PᵀG
    Residual morphism;     // P[X,Y] - [PX,PY]; implied by the other three
    bool passes() const { return idempotence.vanishes && centroid.vanishes && symmetry.vanishes; }
};

template <typename F>
ProjectionCertificate is_orthogonal_projection(const MetricLieAlgebra<F>& a, const Matrix<F>& p,
                                               bool with_morphism = true) {
    const std::size_t n = a.dim();
    if (p.rows() != n || p.cols() != n) throw DimensionMismatch("projection does not match the algebra dimension");
    ProjectionCertificate c;
    c.idempotence = Residual::of(Matrix<F>(p * p - p));
    c.centroid = centroid_residual(a.algebra(), p);
    c.symmetry = symmetry_residual(a.gram(), p, false);
    for (std::size_t i = 0; i < n && with_morphism; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto lhs = p * a.algebra().basis_bracket(i, j);
            auto rhs = a.bracket(p * unit_vector<F>(n, i), p * unit_vector<F>(n, j));
            c.morphism.merge(Residual::of(Vector<F>(lhs - rhs)));
        }
    return c;
}

/// An orthogonal factor: an ideal whose orthogonal complement is an ideal.
template <typename F>
struct Factor {
    Subspace<F> carrier;
    Matrix<F> projection;  // ambient operator onto carrier along its complement
    MetricLieAlgebra<F> induced;
};

/// g = P(g) ⊕ ker(P) for an orthogonal projection P.
template <typename F>
std::pair<Factor<F>, Factor<F>> split_by_projection(const MetricLieAlgebra<F>& a, const Matrix<F>& p) {
    auto cert = is_orthogonal_projection(a, p);
    if (!cert.passes())
        throw NotAProjection("operator is not an orthogonal projection (idempotence " +
                             format_double(cert.idempotence.max_abs) + ", centroid " +
                             format_double(cert.centroid.max_abs) + ", symmetry " +
                             format_double(cert.symmetry.max_abs) + ")");
    Matrix<F> q = Matrix<F>::identity(a.dim()) - p;
    auto im = Subspace<F>::image(p);
    auto ker = Subspace<F>::image(q);
    Factor<F> first{im, p, restrict(a, im)};
    Factor<F> second{ker, q, restrict(a, ker)};
    return {std::move(first), std::move(second)};
}

}  // namespace metriclie
