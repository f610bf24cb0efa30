#pragma once

// Minimal polynomials of operators and rational root extraction.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

#include "metriclie/linalg.hpp"

namespace metriclie {

/// Coefficients in ascending degree; the leading coefficient is nonzero
/// (the zero polynomial is empty).
template <typename F>
struct Polynomial {
    std::vector<F> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    F operator()(const F& x) const {
        F acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    Matrix<F> operator()(const Matrix<F>& m) const {
        Matrix<F> acc = Matrix<F>::zero(m.rows(), m.cols());
        const auto id = Matrix<F>::identity(m.rows());
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * m + coeffs[i] * id;
        return acc;
    }

    /// Quotient by (x - r); the remainder is discarded.
    Polynomial deflate(const F& r) const {
        const std::size_t d = degree();
        std::vector<F> q(d, F(0));
        F carry(0);
        for (std::size_t i = d; i-- > 0;) {
            carry = coeffs[i + 1] + carry * r;
            q[i] = carry;
        }
        return {q};
    }
};

/// Monic minimal polynomial of a square matrix, from the first linear
/// dependency among I, m, m², ... (vectorized).
template <typename F>
Polynomial<F> minimal_polynomial(const Matrix<F>& m) {
    if (!m.square()) throw DimensionMismatch("minimal polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    const std::size_t len = n * n;
    // Incremental elimination: each stored row is a reduced power together
    // with its expression in the powers taken so far.
    struct Reduced {
        std::vector<F> vec;
        std::vector<F> combo;
        std::size_t pivot;
    };
    std::vector<Reduced> rows;
    Matrix<F> power = Matrix<F>::identity(n);
    for (std::size_t deg = 0; deg <= n; ++deg) {
        std::vector<F> v = power.data();
        std::vector<F> combo(deg + 1, F(0));
        combo[deg] = F(1);
        for (const auto& r : rows) {
            F f = v[r.pivot];
            if (is_zero(f)) continue;
            for (std::size_t k = 0; k < len; ++k) v[k] -= f * r.vec[k];
            for (std::size_t k = 0; k < r.combo.size(); ++k) combo[k] -= f * r.combo[k];
        }
        std::size_t piv = len;
        for (std::size_t k = 0; k < len; ++k)
            if (!is_zero(v[k])) {
                piv = k;
                break;
            }
        if (piv == len) return {combo};  // combo(m) = 0 and combo is monic of degree deg
        F inv = F(1) / v[piv];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows.push_back({std::move(v), std::move(combo), piv});
        power = power * m;
    }
    throw InternalAssertionFailure("Cayley-Hamilton bound exceeded in minimal_polynomial");
}

/// Distinct rational roots of a rational polynomial. Candidates come from
/// numerically approximated roots turned into rationals (continued fraction
/// convergents); every candidate is confirmed by exact evaluation, so a
/// returned root is always a root.
inline std::vector<Rational> rational_roots(Polynomial<Rational> p) {
    std::vector<Rational> roots;
    while (p.degree() >= 1) {
        const std::size_t d = p.degree();
        if (d == 1) {
            roots.push_back(Rational(-p.coeffs[0] / p.coeffs[1]));
            break;
        }
        // companion matrix eigenvalues
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        const double lead = p.coeffs[d].get_d();
        for (std::size_t i = 1; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        for (std::size_t i = 0; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -p.coeffs[i].get_d() / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        bool found = false;
        for (Eigen::Index k = 0; k < es.eigenvalues().size() && !found; ++k) {
            auto z = es.eigenvalues()(k);
            if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z.real()))) continue;
            // continued fraction convergents of the real part
            double x = z.real();
            mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
            mpz_class k_prev = 0, kk = 1;
            double frac = x - std::floor(x);
            for (int step = 0; step < 40; ++step) {
                Rational cand(h, kk);
                cand.canonicalize();
                if (sgn(p(cand)) == 0) {
                    roots.push_back(cand);
                    p = p.deflate(cand);
                    found = true;
                    break;
                }
                if (frac < 1e-12) break;
                double inv = 1.0 / frac;
                auto a = static_cast<long>(std::floor(inv));
                frac = inv - std::floor(inv);
                mpz_class h_next = a * h + h_prev;
                mpz_class k_next = a * kk + k_prev;
                h_prev = h;
                h = h_next;
                k_prev = kk;
                kk = k_next;
                if (abs(kk) > mpz_class("1000000000000")) break;
            }
        }
        if (!found) break;
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace metriclie
