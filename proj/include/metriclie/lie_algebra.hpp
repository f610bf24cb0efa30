#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "metriclie/linalg.hpp"
#include "metriclie/subspace.hpp"

namespace metriclie {

/// One term c·X_k of a bracket [X_i, X_j]; indices are 0-based in memory.
template <typename F>
struct BracketTerm {
    std::size_t k;
    F c;
    friend bool operator==(const BracketTerm&, const BracketTerm&) = default;
};

/// Finite-dimensional Lie algebra given by structure constants on a basis.
/// Only pairs i < j are stored; [X_j, X_i] is the negation and [X_i, X_i] = 0.
template <typename F>
class LieAlgebra {
public:
    using Table = std::map<std::pair<std::size_t, std::size_t>, std::vector<BracketTerm<F>>>;

    LieAlgebra() = default;

    /// Builds the algebra from i<j entries. Throws ParseError on diagonal or
    /// reversed pairs and out-of-range indices. Does not check Jacobi.
    LieAlgebra(std::size_t dim, std::vector<std::string> labels, Table table)
        : n_(dim), labels_(std::move(labels)) {
        if (labels_.empty())
            for (std::size_t i = 0; i < n_; ++i) labels_.push_back("X" + std::to_string(i + 1));
        if (labels_.size() != n_) throw ParseError("expected " + std::to_string(n_) + " basis labels");
        for (auto& [key, terms] : table) {
            auto [i, j] = key;
            if (i == j) throw ParseError("diagonal bracket [X" + std::to_string(i + 1) + ",X" + std::to_string(i + 1) + "] is forbidden");
            if (i > j) throw ParseError("bracket entries must have i < j");
            if (j >= n_) throw ParseError("bracket index out of range");
            std::map<std::size_t, F> merged;
            for (auto& t : terms) {
                if (t.k >= n_) throw ParseError("bracket term index out of range");
                merged[t.k] += t.c;
            }
            std::vector<BracketTerm<F>> clean;
            for (auto& [k, c] : merged)
                if (!metriclie::is_zero(c)) clean.push_back({k, c});
            if (!clean.empty()) table_[key] = std::move(clean);
        }
        dense_.assign(n_ * n_ * n_, F(0));
        for (const auto& [key, terms] : table_) {
            auto [i, j] = key;
            for (const auto& t : terms) {
                at(i, j, t.k) = t.c;
                at(j, i, t.k) = -t.c;
            }
        }
    }

    std::size_t dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Table& table() const { return table_; }

    /// Coefficient of X_k in [X_i, X_j] (any i, j).
    const F& constant(std::size_t i, std::size_t j, std::size_t k) const { return dense_[(i * n_ + j) * n_ + k]; }

    bool is_abelian() const { return table_.empty(); }

    Vector<F> bracket(const Vector<F>& u, const Vector<F>& v) const {
        if (u.size() != n_ || v.size() != n_) throw DimensionMismatch("bracket arguments must have length " + std::to_string(n_));
        Vector<F> out(n_, F(0));
        for (const auto& [key, terms] : table_) {
            auto [i, j] = key;
            F coeff = u[i] * v[j] - u[j] * v[i];
            if (metriclie::is_zero(coeff)) continue;
            for (const auto& t : terms) out[t.k] += coeff * t.c;
        }
        return out;
    }

    /// [X_i, X_j] as a coordinate vector.
    Vector<F> basis_bracket(std::size_t i, std::size_t j) const {
        Vector<F> out(n_);
        for (std::size_t k = 0; k < n_; ++k) out[k] = constant(i, j, k);
        return out;
    }

    /// Matrix of ad(X_i): column j is [X_i, X_j].
    Matrix<F> ad(std::size_t i) const {
        Matrix<F> m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) m(k, j) = constant(i, j, k);
        return m;
    }

    Matrix<F> ad(const Vector<F>& u) const {
        Matrix<F> m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            auto col = bracket(u, unit_vector<F>(n_, j));
            for (std::size_t k = 0; k < n_; ++k) m(k, j) = col[k];
        }
        return m;
    }

    template <typename G>
    LieAlgebra<G> cast() const {
        typename LieAlgebra<G>::Table t;
        for (const auto& [key, terms] : table_) {
            std::vector<BracketTerm<G>> out;
            for (const auto& term : terms) {
                if constexpr (std::is_same_v<F, G>)
                    out.push_back({term.k, term.c});
                else
                    out.push_back({term.k, scalar_cast<G>(term.c)});
            }
            t[key] = std::move(out);
        }
        return LieAlgebra<G>(n_, labels_, std::move(t));
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.n_ == b.n_ && a.labels_ == b.labels_ && a.table_ == b.table_;
    }

private:
    F& at(std::size_t i, std::size_t j, std::size_t k) { return dense_[(i * n_ + j) * n_ + k]; }

    std::size_t n_ = 0;
    std::vector<std::string> labels_;
    Table table_;
    std::vector<F> dense_;
};

struct JacobiReport {
    double max_residual = 0.0;
    bool holds = true;
    std::array<std::size_t, 3> worst_triple{};  // 1-based; meaningful when max_residual > 0
};

/// Evaluates [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]] on all
/// triples i < j < k (the expression is alternating, so these suffice).
template <typename F>
JacobiReport check_jacobi(const LieAlgebra<F>& g) {
    JacobiReport r;
    const std::size_t n = g.dim();
    std::vector<Vector<F>> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector<F>(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                auto s = g.bracket(e[i], g.basis_bracket(j, k)) + g.bracket(e[j], g.basis_bracket(k, i)) +
                         g.bracket(e[k], g.basis_bracket(i, j));
                double m = max_abs(s);
                bool zero = is_zero_vector(s);
                if (!zero) r.holds = false;
                if (m > r.max_residual) {
                    r.max_residual = m;
                    r.worst_triple = {i + 1, j + 1, k + 1};
                }
            }
    return r;
}

/// Inner product given by a symmetric positive definite Gram matrix.
template <typename F>
class Metric {
public:
    Metric() = default;
    explicit Metric(Matrix<F> gram) : gram_(std::move(gram)) {
        if (!gram_.square()) throw DimensionMismatch("Gram matrix must be square");
        const std::size_t n = gram_.rows();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!approx_equal(gram_(i, j), gram_(j, i)))
                    throw MetricNotSymmetric("Gram matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ")");
        auto piv = leading_minor_pivots(gram_);
        if (piv.size() < n || (n > 0 && !positive(piv.back())))
            throw MetricNotPositiveDefinite(piv.size(), "Gram matrix is not positive definite: leading minor " +
                                                            std::to_string(piv.size()) + " is not positive");
    }
    static Metric identity(std::size_t n) { return Metric(Matrix<F>::identity(n)); }

    const Matrix<F>& gram() const { return gram_; }
    std::size_t dim() const { return gram_.rows(); }
    F inner(const Vector<F>& u, const Vector<F>& v) const { return bilinear(gram_, u, v); }

    template <typename G>
    Metric<G> cast() const {
        return Metric<G>(gram_.template cast<G>());
    }
    friend bool operator==(const Metric& a, const Metric& b) { return a.gram_ == b.gram_; }

private:
    static bool positive(const F& p) {
        if constexpr (is_exact_v<F>)
            return sgn(p) > 0;
        else
            return p > numeric_tolerance();
    }
    Matrix<F> gram_;
};

/// Lie algebra plus inner product. Construction checks Jacobi and the metric.
template <typename F>
class MetricLieAlgebra {
public:
    MetricLieAlgebra() = default;
    MetricLieAlgebra(LieAlgebra<F> algebra, Metric<F> metric, std::string name = {})
        : algebra_(std::move(algebra)), metric_(std::move(metric)), name_(std::move(name)) {
        if (metric_.dim() != algebra_.dim())
            throw DimensionMismatch("metric dimension " + std::to_string(metric_.dim()) +
                                    " differs from algebra dimension " + std::to_string(algebra_.dim()));
        auto rep = check_jacobi(algebra_);
        if (!rep.holds) {
            const auto& t = rep.worst_triple;
            throw JacobiViolation(t, rep.max_residual,
                                  "Jacobi identity fails on (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                      std::to_string(t[2]) + "), residual " + format_double(rep.max_residual));
        }
    }

    /// Skips the Jacobi check, for brackets inherited from a checked algebra
    /// (subalgebras, direct sums, casts).
    static MetricLieAlgebra unchecked(LieAlgebra<F> algebra, Metric<F> metric, std::string name = {}) {
        if (metric.dim() != algebra.dim()) throw DimensionMismatch("metric dimension differs from algebra dimension");
        MetricLieAlgebra out;
        out.algebra_ = std::move(algebra);
        out.metric_ = std::move(metric);
        out.name_ = std::move(name);
        return out;
    }

    const LieAlgebra<F>& algebra() const { return algebra_; }
    const Metric<F>& metric() const { return metric_; }
    const Matrix<F>& gram() const { return metric_.gram(); }
    const std::string& name() const { return name_; }
    std::size_t dim() const { return algebra_.dim(); }

    Vector<F> bracket(const Vector<F>& u, const Vector<F>& v) const { return algebra_.bracket(u, v); }
    F inner(const Vector<F>& u, const Vector<F>& v) const { return metric_.inner(u, v); }

    /// Same (already checked) bracket with another metric.
    MetricLieAlgebra with_metric(Metric<F> m, std::string name = {}) const {
        return unchecked(algebra_, std::move(m), name.empty() ? name_ : std::move(name));
    }

    template <typename G>
    MetricLieAlgebra<G> cast() const {
        return MetricLieAlgebra<G>::unchecked(algebra_.template cast<G>(), metric_.template cast<G>(), name_);
    }

    friend bool operator==(const MetricLieAlgebra& a, const MetricLieAlgebra& b) {
        return a.name_ == b.name_ && a.algebra_ == b.algebra_ && a.metric_ == b.metric_;
    }

private:
    LieAlgebra<F> algebra_;
    Metric<F> metric_;
    std::string name_;
};

/// Z(g): kernel of the stacked adjoint maps.
template <typename F>
Subspace<F> center(const LieAlgebra<F>& g) {
    const std::size_t n = g.dim();
    // rows indexed by (j,k), unknown z_i: sum_i z_i c_{ij}^k = 0
    Matrix<F> m(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) m(j * n + k, i) = g.constant(i, j, k);
    return Subspace<F>::kernel(m);
}

template <typename F>
Subspace<F> center(const MetricLieAlgebra<F>& a) {
    return center(a.algebra());
}

/// [g, g]: span of all basis brackets.
template <typename F>
Subspace<F> derived_subalgebra(const LieAlgebra<F>& g) {
    std::vector<Vector<F>> vecs;
    for (const auto& [key, terms] : g.table()) vecs.push_back(g.basis_bracket(key.first, key.second));
    return Subspace<F>::span(g.dim(), vecs);
}

template <typename F>
Subspace<F> derived_subalgebra(const MetricLieAlgebra<F>& a) {
    return derived_subalgebra(a.algebra());
}

/// True iff Z(g) is not contained in [g, g], i.e. an orthogonal abelian
/// factor exists. Independent of the metric.
template <typename F>
bool has_abelian_factor(const LieAlgebra<F>& g) {
    if (g.dim() == 0) return false;
    return !derived_subalgebra(g).contains(center(g));
}

template <typename F>
bool has_abelian_factor(const MetricLieAlgebra<F>& a) {
    return has_abelian_factor(a.algebra());
}

template <typename F>
LieAlgebra<F> direct_sum(const LieAlgebra<F>& a, const LieAlgebra<F>& b) {
    const std::size_t n = a.dim();
    typename LieAlgebra<F>::Table t = a.table();
    for (const auto& [key, terms] : b.table()) {
        std::vector<BracketTerm<F>> shifted;
        for (const auto& term : terms) shifted.push_back({term.k + n, term.c});
        t[{key.first + n, key.second + n}] = std::move(shifted);
    }
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return LieAlgebra<F>(n + b.dim(), std::move(labels), std::move(t));
}

/// Orthogonal direct sum: block structure constants, block-diagonal Gram.
template <typename F>
MetricLieAlgebra<F> direct_sum(const MetricLieAlgebra<F>& a, const MetricLieAlgebra<F>& b) {
    std::string name = a.name().empty() ? b.name() : (b.name().empty() ? a.name() : a.name() + "+" + b.name());
    return MetricLieAlgebra<F>::unchecked(direct_sum(a.algebra(), b.algebra()),
                                          Metric<F>(block_diagonal(a.gram(), b.gram())), std::move(name));
}

/// Induced algebra on a subalgebra, in the canonical basis of s. Throws
/// NotASubalgebra with the first basis pair whose bracket leaves s.
template <typename F>
MetricLieAlgebra<F> restrict(const MetricLieAlgebra<F>& a, const Subspace<F>& s) {
    if (s.ambient_dim() != a.dim()) throw DimensionMismatch("subspace does not live in the algebra");
    const std::size_t d = s.dim();
    const auto& b = s.basis();
    typename LieAlgebra<F>::Table t;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            auto v = a.bracket(b[i], b[j]);
            if (!s.contains(v))
                throw NotASubalgebra({i, j}, "bracket of basis vectors " + std::to_string(i + 1) + " and " +
                                                 std::to_string(j + 1) + " leaves the subspace");
            auto c = s.coordinates(v);
            std::vector<BracketTerm<F>> terms;
            for (std::size_t k = 0; k < d; ++k)
                if (!is_zero(c[k])) terms.push_back({k, c[k]});
            if (!terms.empty()) t[{i, j}] = std::move(terms);
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < d; ++i) {
        const auto& v = b[i];
        std::size_t nonzero = 0, where = 0;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!is_zero(v[k])) {
                ++nonzero;
                where = k;
            }
        labels.push_back(nonzero == 1 ? a.algebra().labels()[where] : "V" + std::to_string(i + 1));
    }
    Matrix<F> basis = s.basis_matrix();
    Matrix<F> gram = basis.transpose() * a.gram() * basis;
    return MetricLieAlgebra<F>::unchecked(LieAlgebra<F>(d, std::move(labels), std::move(t)), Metric<F>(std::move(gram)),
                                          a.name());
}

/// Checks that a subspace is an ideal: [X_i, s] ⊆ s for every basis vector X_i.
template <typename F>
bool is_ideal(const LieAlgebra<F>& g, const Subspace<F>& s) {
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (const auto& v : s.basis())
            if (!s.contains(g.bracket(unit_vector<F>(g.dim(), i), v))) return false;
    return true;
}

}  // namespace metriclie
