#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "metriclie/errors.hpp"
#include "metriclie/scalar.hpp"

namespace metriclie {

template <typename F>
using Vector = std::vector<F>;

/// Dense row-major matrix. Operators on an n-dimensional algebra are n x n
/// matrices acting on coordinate column vectors.
template <typename F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::initializer_list<std::initializer_list<F>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    /// Columns given as vectors of equal length.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector<F>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw DimensionMismatch("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector<F> column(std::size_t j) const {
        Vector<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    /// Row-major flattening.
    const std::vector<F>& data() const { return data_; }

    static Matrix from_data(std::size_t rows, std::size_t cols, std::vector<F> data) {
        if (data.size() != rows * cols) throw DimensionMismatch("flat data size mismatch");
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(data);
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const F& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (is_zero_exactly(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!is_zero_exactly(b(k, j))) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector<F> operator*(const Matrix& a, const Vector<F>& v) {
        if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
        Vector<F> out(a.rows_, F(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!is_zero_exactly(v[k])) out[i] += a(i, k) * v[k];
        return out;
    }

    /// Exact entrywise equality (no tolerance).
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Largest absolute entry, as a double.
    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, FieldTraits<F>::magnitude(x));
        return m;
    }

    /// Every entry vanishes (tolerance-aware on the numeric backend).
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const F& x) { return metriclie::is_zero(x); });
    }

    template <typename G>
    Matrix<G> cast() const {
        std::vector<G> out;
        out.reserve(data_.size());
        for (const auto& x : data_) {
            if constexpr (std::is_same_v<F, G>)
                out.push_back(x);
            else if constexpr (std::is_same_v<F, Rational> && std::is_same_v<G, double>)
                out.push_back(x.get_d());
            else
                static_assert(std::is_same_v<F, G>, "unsupported scalar cast");
        }
        return Matrix<G>::from_data(rows_, cols_, std::move(out));
    }

private:
    static bool is_zero_exactly(const F& x) {
        if constexpr (is_exact_v<F>)
            return sgn(x) == 0;
        else
            return x == 0.0;
    }
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <typename F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

template <typename F>
F dot(const Vector<F>& a, const Vector<F>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
    F s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// uᵀ G v
template <typename F>
F bilinear(const Matrix<F>& g, const Vector<F>& u, const Vector<F>& v) {
    return dot(u, g * v);
}

template <typename F>
Vector<F> unit_vector(std::size_t n, std::size_t i) {
    Vector<F> v(n, F(0));
    v[i] = F(1);
    return v;
}

template <typename F>
Vector<F> operator+(Vector<F> a, const Vector<F>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <typename F>
Vector<F> operator-(Vector<F> a, const Vector<F>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <typename F>
Vector<F> scaled(Vector<F> a, const F& s) {
    for (auto& x : a) x *= s;
    return a;
}

template <typename F>
double max_abs(const Vector<F>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, FieldTraits<F>::magnitude(x));
    return m;
}

template <typename F>
bool is_zero_vector(const Vector<F>& v) {
    return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

/// Residual-carrying check result used by the certificate types.
struct Residual {
    double max_abs = 0.0;
    bool vanishes = true;

    template <typename F>
    static Residual of(const Matrix<F>& m) {
        return {m.max_abs(), m.is_zero()};
    }
    template <typename F>
    static Residual of(const Vector<F>& v) {
        return {metriclie::max_abs(v), is_zero_vector(v)};
    }
    Residual& merge(const Residual& o) {
        max_abs = std::max(max_abs, o.max_abs);
        vanishes = vanishes && o.vanishes;
        return *this;
    }
};

}  // namespace metriclie
