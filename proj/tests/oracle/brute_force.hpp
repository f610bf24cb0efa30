#pragma once

// Brute-force reference for orthogonal bi-invariant complex structures.
//
// Works directly on structure constants with its own dense rational
// elimination: the linear conditions J[X_i,X_j] = [J X_i, X_j] and
// GJ + JᵀG = 0 give a basis B_1..B_m; J = Σ t_a B_a then satisfies J² = -I
// iff Σ_{a<=b} s_ab (B_a B_b + B_b B_a)/(1 + [a=b]) = -I with s_ab = t_a t_b.
// That linear system is solved for s; t_a = ±sqrt(s_aa) and every sign
// choice is checked against J² = -I.

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;  // row-major, square

struct Input {
    std::size_t n = 0;
    std::vector<Q> c;  // c[(i*n + j)*n + k] = coefficient of X_k in [X_i, X_j], both orders filled
    Mat gram;

    const Q& at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * n + j) * n + k]; }
};

/// Row echelon via streaming reduction; returns a basis of the solution space
/// of the homogeneous system with `unknowns` columns.
class Kernel {
public:
    explicit Kernel(std::size_t unknowns) : m_(unknowns) {}

    void add(std::vector<Q> row) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Q f = row[piv_[r]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < m_; ++k)
                if (rows_[r][k] != 0) row[k] -= f * rows_[r][k];
        }
        std::size_t p = 0;
        while (p < m_ && row[p] == 0) ++p;
        if (p == m_) return;
        const Q inv = 1 / row[p];
        for (auto& x : row) x *= inv;
        for (auto& other : rows_) {
            const Q f = other[p];
            if (f == 0) continue;
            for (std::size_t k = 0; k < m_; ++k) other[k] -= f * row[k];
        }
        rows_.push_back(std::move(row));
        piv_.push_back(p);
    }

    std::vector<std::vector<Q>> basis() const {
        std::vector<bool> is_piv(m_, false);
        for (auto p : piv_) is_piv[p] = true;
        std::vector<std::vector<Q>> out;
        for (std::size_t free = 0; free < m_; ++free) {
            if (is_piv[free]) continue;
            std::vector<Q> v(m_, 0);
            v[free] = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r) v[piv_[r]] = -rows_[r][free];
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    std::size_t m_;
    std::vector<std::vector<Q>> rows_;
    std::vector<std::size_t> piv_;
};

inline Mat zero(std::size_t n) { return Mat(n, std::vector<Q>(n, 0)); }

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat r = zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

/// Solution set of the skew, bi-invariant conditions as n x n matrices.
inline std::vector<Mat> skew_biinvariant_basis(const Input& in) {
    const std::size_t n = in.n;
    const std::size_t m = n * n;  // J_{ab} at a*n + b
    Kernel ker(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < n; ++a) {
                // (J[X_i,X_j])_a - ([J X_i, X_j])_a
                std::vector<Q> row(m, 0);
                bool any = false;
                for (std::size_t k = 0; k < n; ++k)
                    if (in.at(i, j, k) != 0) {
                        row[a * n + k] += in.at(i, j, k);
                        any = true;
                    }
                for (std::size_t b = 0; b < n; ++b)
                    if (in.at(b, j, a) != 0) {
                        row[b * n + i] -= in.at(b, j, a);
                        any = true;
                    }
                if (any) ker.add(std::move(row));
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            // (GJ + JᵀG)_{ab} = Σ_c G_ac J_cb + J_ca G_cb
            std::vector<Q> row(m, 0);
            for (std::size_t c = 0; c < n; ++c) {
                row[c * n + b] += in.gram[a][c];
                row[c * n + a] += in.gram[c][b];
            }
            ker.add(std::move(row));
        }
    std::vector<Mat> out;
    for (const auto& v : ker.basis()) {
        Mat b = zero(n);
        for (std::size_t k = 0; k < m; ++k) b[k / n][k % n] = v[k];
        out.push_back(std::move(b));
    }
    return out;
}

struct Result {
    bool undetermined = false;  // the squares t_a² are not fixed by the linear system (e.g. abelian input)
    std::vector<Mat> exact;                  // all solutions when every sqrt is rational
    std::vector<std::vector<std::vector<double>>> approx;  // otherwise
    bool is_exact() const { return approx.empty(); }
    std::size_t count() const { return is_exact() ? exact.size() : approx.size(); }
};

inline Result solve(const Input& in) {
    Result res;
    const std::size_t n = in.n;
    if (n == 0) return res;
    auto basis = skew_biinvariant_basis(in);
    const std::size_t m = basis.size();
    if (m == 0) return res;

    // unknowns s_ab, a <= b
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) pairs.emplace_back(a, b);
    const std::size_t u = pairs.size();
    std::vector<Mat> coeff;
    for (auto [a, b] : pairs) {
        Mat c = mul(basis[a], basis[b]);
        if (a != b) {
            Mat d = mul(basis[b], basis[a]);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += d[i][j];
        }
        coeff.push_back(std::move(c));
    }
    // augmented homogeneous system in (s, w): Σ s C + w I = 0 with w = 1
    Kernel ker(u + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Q> row(u + 1, 0);
            for (std::size_t p = 0; p < u; ++p) row[p] = coeff[p][i][j];
            row[u] = i == j ? 1 : 0;
            ker.add(std::move(row));
        }
    auto sols = ker.basis();
    // particular solution needs w = 1; directions with w = 0 are the freedom
    std::optional<std::vector<Q>> particular;
    std::vector<std::vector<Q>> homogeneous;
    for (auto& v : sols) {
        if (v[u] != 0 && !particular) {
            Q w = v[u];
            for (auto& x : v) x /= w;
            particular = v;
        } else {
            homogeneous.push_back(v);
        }
    }
    if (!particular) return res;  // J² = -I impossible
    for (auto& h : homogeneous) {
        if (h[u] != 0 && particular) {
            Q w = h[u];
            for (std::size_t k = 0; k <= u; ++k) h[k] -= w * (*particular)[k];
        }
        for (std::size_t p = 0; p < u; ++p)
            if (pairs[p].first == pairs[p].second && h[p] != 0) {
                res.undetermined = true;
                return res;
            }
    }

    std::vector<Q> squares(m);
    for (std::size_t p = 0; p < u; ++p)
        if (pairs[p].first == pairs[p].second) squares[pairs[p].first] = (*particular)[p];
    for (const auto& s : squares)
        if (s < 0) return res;

    std::vector<std::optional<Q>> roots(m);
    bool all_rational = true;
    for (std::size_t a = 0; a < m; ++a) {
        mpz_class num = squares[a].get_num(), den = squares[a].get_den();
        mpz_class rn = sqrt(num), rd = sqrt(den);
        if (rn * rn == num && rd * rd == den)
            roots[a] = Q(rn, rd);
        else
            all_rational = false;
    }

    const std::size_t combos = std::size_t{1} << m;
    if (all_rational) {
        std::set<std::vector<Q>> seen;
        for (std::size_t mask = 0; mask < combos; ++mask) {
            Mat j = zero(n);
            for (std::size_t a = 0; a < m; ++a) {
                Q t = (mask >> a) & 1U ? Q(-*roots[a]) : *roots[a];
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) j[r][c] += t * basis[a][r][c];
            }
            Mat sq = mul(j, j);
            bool ok = true;
            for (std::size_t r = 0; r < n && ok; ++r)
                for (std::size_t c = 0; c < n && ok; ++c) ok = sq[r][c] == (r == c ? -1 : 0);
            if (!ok) continue;
            std::vector<Q> flat;
            for (const auto& row : j) flat.insert(flat.end(), row.begin(), row.end());
            if (seen.insert(flat).second) res.exact.push_back(std::move(j));
        }
        return res;
    }
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::vector<double>> j(n, std::vector<double>(n, 0.0));
        for (std::size_t a = 0; a < m; ++a) {
            double t = std::sqrt(squares[a].get_d());
            if ((mask >> a) & 1U) t = -t;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) j[r][c] += t * basis[a][r][c].get_d();
        }
        double worst = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) s += j[r][k] * j[k][c];
                worst = std::max(worst, std::abs(s - (r == c ? -1.0 : 0.0)));
            }
        if (worst > 1e-9) continue;
        bool dup = false;
        for (const auto& other : res.approx) {
            double d = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) d = std::max(d, std::abs(other[r][c] - j[r][c]));
            dup = dup || d <= 1e-9;
        }
        if (!dup) res.approx.push_back(std::move(j));
    }
    return res;
}

}  // namespace oracle
