#pragma once

#include <algorithm>
#include <compare>
#include <vector>

#include "metriclie/linalg.hpp"

namespace metriclie {

/// Subspace of F^n held in reduced column echelon form: each basis vector has
/// a pivot coordinate equal to 1, every other basis vector is 0 there, and
/// vectors are ordered by pivot. The form is unique, so equality of
/// subspaces is equality of bases.
template <typename F>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : n_(ambient_dim) {}

    /// Span of arbitrary (possibly dependent) vectors.
    static Subspace span(std::size_t ambient_dim, const std::vector<Vector<F>>& vectors) {
        Subspace s(ambient_dim);
        s.basis_ = canonical_row_basis(vectors, ambient_dim);
        for (const auto& b : s.basis_) {
            auto it = std::find_if(b.begin(), b.end(), [](const F& x) { return !metriclie::is_zero(x); });
            s.pivots_.push_back(static_cast<std::size_t>(it - b.begin()));
        }
        return s;
    }
    static Subspace whole(std::size_t n) {
        std::vector<Vector<F>> e;
        for (std::size_t i = 0; i < n; ++i) e.push_back(unit_vector<F>(n, i));
        return span(n, e);
    }
    static Subspace zero(std::size_t n) { return Subspace(n); }

    /// Column space of a matrix.
    static Subspace image(const Matrix<F>& m) {
        std::vector<Vector<F>> cols;
        for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
        return span(m.rows(), cols);
    }
    static Subspace kernel(const Matrix<F>& m) { return span(m.cols(), nullspace(m)); }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    const std::vector<Vector<F>>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// n x dim matrix whose columns are the canonical basis.
    Matrix<F> basis_matrix() const { return Matrix<F>::from_columns(n_, basis_); }

    /// Coordinates of v in the canonical basis, read off the pivot entries.
    /// Only meaningful when contains(v).
    Vector<F> coordinates(const Vector<F>& v) const {
        Vector<F> c(dim());
        for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    /// dim x n matrix taking an ambient vector in the subspace to coordinates.
    Matrix<F> coordinate_map() const {
        Matrix<F> m(dim(), n_);
        for (std::size_t i = 0; i < dim(); ++i) m(i, pivots_[i]) = F(1);
        return m;
    }

    Vector<F> from_coordinates(const Vector<F>& c) const {
        Vector<F> v(n_, F(0));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t k = 0; k < n_; ++k) v[k] += c[i] * basis_[i][k];
        return v;
    }

    bool contains(const Vector<F>& v) const {
        if (v.size() != n_) throw DimensionMismatch("vector does not live in the ambient space");
        return is_zero_vector(v - from_coordinates(coordinates(v)));
    }
    bool contains(const Subspace& other) const {
        return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const auto& b) { return contains(b); });
    }

    Subspace operator+(const Subspace& o) const {
        check(o);
        auto all = basis_;
        all.insert(all.end(), o.basis_.begin(), o.basis_.end());
        return span(n_, all);
    }

    Subspace intersect(const Subspace& o) const {
        check(o);
        // x = B a = C b  <=>  [B | -C] (a, b) = 0
        const std::size_t p = dim(), q = o.dim();
        Matrix<F> m(n_, p + q);
        for (std::size_t k = 0; k < n_; ++k) {
            for (std::size_t i = 0; i < p; ++i) m(k, i) = basis_[i][k];
            for (std::size_t j = 0; j < q; ++j) m(k, p + j) = -o.basis_[j][k];
        }
        std::vector<Vector<F>> vecs;
        for (const auto& sol : nullspace(m)) {
            Vector<F> a(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(p));
            vecs.push_back(from_coordinates(a));
        }
        return span(n_, vecs);
    }

    /// Orthogonal complement with respect to the Gram matrix g.
    Subspace orthogonal_complement(const Matrix<F>& g) const {
        Matrix<F> m(dim(), n_);
        for (std::size_t i = 0; i < dim(); ++i) {
            auto row = g * basis_[i];  // g symmetric
            for (std::size_t k = 0; k < n_; ++k) m(i, k) = row[k];
        }
        return kernel(m);
    }

    Subspace mapped(const Matrix<F>& op) const {
        std::vector<Vector<F>> imgs;
        for (const auto& b : basis_) imgs.push_back(op * b);
        return span(op.rows(), imgs);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        if (a.n_ != b.n_ || a.pivots_ != b.pivots_) return false;
        if constexpr (is_exact_v<F>) {
            return a.basis_ == b.basis_;
        } else {
            for (std::size_t i = 0; i < a.basis_.size(); ++i)
                if (!is_zero_vector(a.basis_[i] - b.basis_[i])) return false;
            return true;
        }
    }

    /// Total order used to sort factors: dimension, then pivot positions,
    /// then basis entries.
    friend bool canonical_less(const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
        for (std::size_t i = 0; i < a.basis_.size(); ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                const F& x = a.basis_[i][k];
                const F& y = b.basis_[i][k];
                if (approx_equal(x, y)) continue;
                return x < y;
            }
        return false;
    }

private:
    void check(const Subspace& o) const {
        if (o.n_ != n_) throw DimensionMismatch("subspaces live in different ambient spaces");
    }

    std::size_t n_ = 0;
    std::vector<Vector<F>> basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace metriclie
