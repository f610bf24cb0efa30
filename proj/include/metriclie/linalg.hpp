#pragma once

// Elimination kernels: reduced row echelon forms, nullspaces, a streaming
// sparse solver for the large operator systems, inverses and the leading
// minor test for positive definiteness.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "metriclie/matrix.hpp"

namespace metriclie {

template <typename F>
struct Echelon {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, ascending
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. The numeric path uses partial pivoting and
/// flushes entries below tolerance to zero.
template <typename F>
Echelon<F> rref(Matrix<F> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        if constexpr (is_exact_v<F>) {
            for (std::size_t i = r; i < rows; ++i)
                if (sgn(m(i, c)) != 0) {
                    best = i;
                    break;
                }
        } else {
            double best_mag = numeric_tolerance();
            for (std::size_t i = r; i < rows; ++i)
                if (std::abs(m(i, c)) > best_mag) {
                    best_mag = std::abs(m(i, c));
                    best = i;
                }
        }
        if (best == rows) {
            if constexpr (!is_exact_v<F>)
                for (std::size_t i = r; i < rows; ++i) m(i, c) = 0.0;
            continue;
        }
        if (best != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
        F inv = F(1) / m(r, c);
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        m(r, c) = F(1);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            F f = m(i, c);
            if (is_zero(f)) {
                if constexpr (!is_exact_v<F>) m(i, c) = 0.0;
                continue;
            }
            for (std::size_t j = c + 1; j < cols; ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
            m(i, c) = F(0);
        }
        pivots.push_back(c);
        ++r;
    }
    if constexpr (!is_exact_v<F>) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (std::abs(m(i, j)) <= numeric_tolerance()) m(i, j) = 0.0;
    }
    return {std::move(m), std::move(pivots)};
}

template <typename F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank();
}

namespace detail {

template <typename F>
std::vector<Vector<F>> nullspace_from_rref(const Echelon<F>& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector<F>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector<F> v(cols, F(0));
        v[f] = F(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vector<double>> numeric_nullspace(const Eigen::MatrixXd& a) {
    const auto cols = a.cols();
    std::vector<Vector<double>> out;
    if (cols == 0) return out;
    Eigen::MatrixXd work = a;
    if (work.rows() < cols) {
        work.conservativeResize(cols, Eigen::NoChange);
        work.bottomRows(cols - a.rows()).setZero();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(work, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (Eigen::Index k = 0; k < cols; ++k) {
        double s = k < sv.size() ? sv(k) : 0.0;
        if (s <= numeric_tolerance() * scale) {
            Vector<double> v(static_cast<std::size_t>(cols));
            for (Eigen::Index i = 0; i < cols; ++i) v[static_cast<std::size_t>(i)] = svd.matrixV()(i, k);
            out.push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace detail

/// Canonical form of the row space of `rows`: the nonzero rows of the RREF.
template <typename F>
std::vector<Vector<F>> canonical_row_basis(const std::vector<Vector<F>>& vectors, std::size_t length) {
    Matrix<F> m(vectors.size(), length);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != length) throw DimensionMismatch("vector length mismatch");
        for (std::size_t j = 0; j < length; ++j) m(i, j) = vectors[i][j];
    }
    auto e = rref(std::move(m));
    std::vector<Vector<F>> out;
    for (std::size_t r = 0; r < e.rank(); ++r) {
        auto row = e.reduced.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

/// Basis of {x : m x = 0}, in canonical (reduced) form.
template <typename F>
std::vector<Vector<F>> nullspace(const Matrix<F>& m) {
    if constexpr (is_exact_v<F>) {
        return detail::nullspace_from_rref(rref(m), m.cols());
    } else {
        Eigen::MatrixXd a(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        return canonical_row_basis(detail::numeric_nullspace(a), m.cols());
    }
}

/// Homogeneous linear system assembled one sparse equation at a time.
/// Exact: rows are reduced against an echelon basis as they arrive, so memory
/// stays bounded by the number of unknowns. Numeric: rows are collected and
/// the kernel is taken by SVD.
template <typename F>
class SparseSystem {
public:
    using Entry = std::pair<std::uint32_t, F>;
    using Row = std::vector<Entry>;

    explicit SparseSystem(std::size_t unknowns) : n_(unknowns), pivot_(unknowns) {}

    std::size_t unknowns() const { return n_; }

    /// Entries may be unsorted and repeated; they are summed.
    void add_equation(Row row) {
        normalize(row);
        if (row.empty()) return;
        if constexpr (is_exact_v<F>) {
            reduce_and_insert(std::move(row));
        } else {
            numeric_rows_.push_back(std::move(row));
        }
    }

    std::size_t rank() const {
        if constexpr (is_exact_v<F>) {
            return rank_;
        } else {
            return n_ - solve_numeric().size();
        }
    }

    std::vector<Vector<F>> nullspace() const {
        if constexpr (is_exact_v<F>) {
            return solve_exact();
        } else {
            return solve_numeric();
        }
    }

private:
    static void normalize(Row& row) {
        std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
        Row merged;
        for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
        }
        Row out;
        for (auto& e : merged)
            if (!is_zero(e.second)) out.push_back(std::move(e));
        row = std::move(out);
    }

    // row <- row - f * pivot, both sorted
    static Row axpy(const Row& row, const F& f, const Row& pivot) {
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t a = 0, b = 0;
        while (a < row.size() || b < pivot.size()) {
            if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
                out.push_back(row[a++]);
            } else if (a == row.size() || pivot[b].first < row[a].first) {
                out.emplace_back(pivot[b].first, F(-f * pivot[b].second));
                ++b;
            } else {
                F v = row[a].second - f * pivot[b].second;
                if (!is_zero(v)) out.emplace_back(row[a].first, std::move(v));
                ++a;
                ++b;
            }
        }
        return out;
    }

    void reduce_and_insert(Row row) {
        while (!row.empty()) {
            auto lead = row.front().first;
            if (pivot_[lead]) {
                F f = row.front().second;
                row = axpy(row, f, *pivot_[lead]);
            } else {
                F inv = F(1) / row.front().second;
                for (auto& e : row) e.second *= inv;
                pivot_[lead] = std::move(row);
                ++rank_;
                return;
            }
        }
    }

    std::vector<Vector<F>> solve_exact() const {
        // back-substitute into reduced form, highest pivot first
        std::vector<std::optional<Row>> reduced(n_);
        for (std::size_t c = n_; c-- > 0;) {
            if (!pivot_[c]) continue;
            Row row = *pivot_[c];
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t k = 1; k < row.size(); ++k) {
                    auto col = row[k].first;
                    if (reduced[col]) {
                        F f = row[k].second;
                        row = axpy(row, f, *reduced[col]);
                        changed = true;
                        break;
                    }
                }
            }
            reduced[c] = std::move(row);
        }
        std::vector<Vector<F>> basis;
        for (std::size_t f = 0; f < n_; ++f) {
            if (reduced[f]) continue;
            Vector<F> v(n_, F(0));
            v[f] = F(1);
            for (std::size_t c = 0; c < n_; ++c) {
                if (!reduced[c]) continue;
                for (const auto& e : *reduced[c])
                    if (e.first == f) v[c] = -e.second;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<Vector<F>> solve_numeric() const {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(numeric_rows_.size()),
                                                  static_cast<Eigen::Index>(n_));
        for (std::size_t i = 0; i < numeric_rows_.size(); ++i) {
            double norm = 0.0;
            for (const auto& e : numeric_rows_[i]) norm = std::max(norm, std::abs(FieldTraits<F>::to_double(e.second)));
            for (const auto& e : numeric_rows_[i])
                a(static_cast<Eigen::Index>(i), e.first) = FieldTraits<F>::to_double(e.second) / norm;
        }
        auto raw = detail::numeric_nullspace(a);
        std::vector<Vector<F>> conv;
        for (auto& v : raw) conv.emplace_back(v.begin(), v.end());
        return canonical_row_basis(conv, n_);
    }

    std::size_t n_;
    std::size_t rank_ = 0;
    std::vector<std::optional<Row>> pivot_;
    std::vector<Row> numeric_rows_;
};

/// Inverse of a square matrix; nullopt when singular.
template <typename F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
    if (!a.square()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F(1);
    }
    auto e = rref(std::move(aug));
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix<F> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Solves a x = b; nullopt when inconsistent. Free variables are set to 0.
template <typename F>
std::optional<Vector<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
    if (a.rows() != b.size()) throw DimensionMismatch("right-hand side length mismatch");
    Matrix<F> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    Vector<F> x(a.cols(), F(0));
    for (std::size_t r = 0; r < e.rank(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
    return x;
}

/// Pivots of symmetric Gaussian elimination without row exchanges; the k-th
/// leading principal minor is the product of the first k pivots. Stops at the
/// first pivot that is not positive.
template <typename F>
std::vector<F> leading_minor_pivots(const Matrix<F>& g) {
    if (!g.square()) throw DimensionMismatch("Gram matrix must be square");
    const std::size_t n = g.rows();
    Matrix<F> m = g;
    std::vector<F> pivots;
    for (std::size_t k = 0; k < n; ++k) {
        F p = m(k, k);
        pivots.push_back(p);
        bool positive;
        if constexpr (is_exact_v<F>)
            positive = sgn(p) > 0;
        else
            positive = p > numeric_tolerance();
        if (!positive) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            F f = m(i, k) / p;
            if (is_zero(f)) continue;
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return pivots;
}

/// Leading principal minors D_1..D_n (stops early like leading_minor_pivots).
template <typename F>
std::vector<F> leading_principal_minors(const Matrix<F>& g) {
    auto piv = leading_minor_pivots(g);
    std::vector<F> minors;
    F acc(1);
    for (const auto& p : piv) {
        acc *= p;
        minors.push_back(acc);
    }
    return minors;
}

template <typename F>
F determinant(Matrix<F> m) {
    if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = n;
        if constexpr (is_exact_v<F>) {
            for (std::size_t i = c; i < n; ++i)
                if (sgn(m(i, c)) != 0) {
                    best = i;
                    break;
                }
        } else {
            double mag = 0.0;
            for (std::size_t i = c; i < n; ++i)
                if (std::abs(m(i, c)) > mag) {
                    mag = std::abs(m(i, c));
                    best = i;
                }
        }
        if (best == n) return F(0);
        if (best != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            F f = m(i, c) / m(c, c);
            if (is_zero(f)) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

}  // namespace metriclie
