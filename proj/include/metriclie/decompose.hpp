#pragma once

// Unique orthogonal decomposition into irreducible factors.
//
// The symmetric centroid of an algebra without abelian factor is a
// commutative algebra of G-symmetric operators whose idempotents are exactly
// the orthogonal projections onto factors. A generic element is split along
// its eigenvalues; each eigenprojection is again such an idempotent, so the
// factor it cuts out is handled recursively until every piece has a
// one-dimensional symmetric centroid.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdint>
#include <random>
#include <variant>

#include "metriclie/centroid.hpp"
#include "metriclie/polynomial.hpp"

namespace metriclie {

struct DecomposeOptions {
    std::uint64_t seed = 0;
    int coefficient_bound = 7;  // generic coefficients drawn from {-N..N}\{0}
    int max_resamples = 20;
};

template <typename F>
struct Decomposition {
    std::vector<Factor<F>> factors;
    /// dim of the symmetric centroid of each induced factor; all 1.
    std::vector<std::size_t> symmetric_centroid_dims;
    Backend backend = FieldTraits<F>::backend;
    std::uint64_t seed = 0;
    std::size_t resamples = 0;

    std::size_t k() const { return factors.size(); }
    std::vector<Subspace<F>> carriers() const {
        std::vector<Subspace<F>> out;
        for (const auto& f : factors) out.push_back(f.carrier);
        return out;
    }
};

namespace detail {

/// splitmix64 step; stable across standard libraries.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Nonzero integer in [-bound, bound].
inline int draw_nonzero(std::mt19937_64& rng, int bound) {
    auto span = static_cast<std::uint64_t>(2 * bound);
    auto v = static_cast<int>(rng() % span);
    return v < bound ? v - bound : v - bound + 1;
}

template <typename F>
Matrix<F> lagrange_projection(const Matrix<F>& a, const std::vector<F>& roots, std::size_t i) {
    const std::size_t n = a.rows();
    const auto id = Matrix<F>::identity(n);
    Matrix<F> p = id;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i) continue;
        p = p * Matrix<F>(a - roots[j] * id) * F(F(1) / F(roots[i] - roots[j]));
    }
    return p;
}

/// Eigenprojections of a G-symmetric centroid element, as polynomials in it.
/// Exact: rational eigenvalues give Lagrange projections; any irrational
/// remainder of the minimal polynomial is kept together as one extra
/// projection. Throws NumericFallbackRequired when no rational eigenvalue
/// exists although the spectrum is not a single point.
inline std::vector<Matrix<Rational>> eigenprojections(const Matrix<Rational>& a, const Matrix<Rational>&) {
    const std::size_t n = a.rows();
    auto mp = minimal_polynomial(a);
    if (mp.degree() <= 1) return {Matrix<Rational>::identity(n)};
    auto roots = rational_roots(mp);
    if (roots.empty()) throw NumericFallbackRequired("symmetric centroid element has no rational eigenvalue");
    Polynomial<Rational> rest = mp;
    for (const auto& r : roots) rest = rest.deflate(r);
    std::vector<Matrix<Rational>> out;
    const auto id = Matrix<Rational>::identity(n);
    Matrix<Rational> rest_at_a = rest(a);
    Matrix<Rational> sum(n, n);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        Matrix<Rational> p = lagrange_projection(a, roots, i);
        if (rest.degree() > 0) p = p * rest_at_a * Rational(Rational(1) / rest(roots[i]));
        sum += p;
        out.push_back(std::move(p));
    }
    if (rest.degree() > 0) out.push_back(id - sum);
    return out;
}

inline std::vector<Matrix<double>> eigenprojections(const Matrix<double>& a, const Matrix<double>& gram) {
    const std::size_t n = a.rows();
    Eigen::MatrixXd ga(n, n), g(n, n);
    Matrix<double> prod = gram * a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ga(i, j) = 0.5 * (prod(i, j) + prod(j, i));
            g(i, j) = gram(i, j);
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ga, g, Eigen::EigenvaluesOnly);
    std::vector<double> reps;
    std::vector<std::size_t> counts;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        double lam = es.eigenvalues()(k);
        if (!reps.empty() && std::abs(lam - reps.back() / static_cast<double>(counts.back())) <=
                                 numeric_tolerance() * std::max(1.0, std::abs(lam))) {
            reps.back() += lam;
            ++counts.back();
        } else {
            reps.push_back(lam);
            counts.push_back(1);
        }
    }
    for (std::size_t i = 0; i < reps.size(); ++i) reps[i] /= static_cast<double>(counts[i]);
    if (reps.size() <= 1) return {Matrix<double>::identity(n)};
    std::vector<Matrix<double>> out;
    for (std::size_t i = 0; i < reps.size(); ++i) out.push_back(lagrange_projection(a, reps, i));
    return out;
}

template <typename F>
class Decomposer {
public:
    Decomposer(const MetricLieAlgebra<F>& root, const DecomposeOptions& opts)
        : root_(root), opts_(opts), rng_(mix64(opts.seed)) {}

    Decomposition<F> run() {
        Decomposition<F> d;
        d.seed = opts_.seed;
        const std::size_t n = root_.dim();
        if (n > 0) {
            auto id = Matrix<F>::identity(n);
            split(root_, id, id, id, d);
        }
        std::vector<std::size_t> order(d.factors.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return canonical_less(d.factors[x].carrier, d.factors[y].carrier);
        });
        Decomposition<F> sorted = d;
        for (std::size_t i = 0; i < order.size(); ++i) {
            sorted.factors[i] = d.factors[order[i]];
            sorted.symmetric_centroid_dims[i] = d.symmetric_centroid_dims[order[i]];
        }
        sorted.resamples = resamples_;
        return sorted;
    }

private:
    // local: algebra in its own coordinates; lift: n x d basis (ambient);
    // read: d x n left inverse of lift; proj: ambient projection onto span(lift).
    void split(const MetricLieAlgebra<F>& local, const Matrix<F>& lift, const Matrix<F>& read, const Matrix<F>& proj,
               Decomposition<F>& out) {
        auto sym = symmetric_centroid(local);
        if (sym.dim() == 0) throw InternalAssertionFailure("symmetric centroid lost the identity");
        if (sym.dim() == 1) {
            auto carrier = Subspace<F>::image(lift);
            out.factors.push_back({carrier, proj, restrict(root_, carrier)});
            out.symmetric_centroid_dims.push_back(1);
            return;
        }
        for (int attempt = 0; attempt <= opts_.max_resamples; ++attempt) {
            std::vector<F> coeffs;
            for (std::size_t i = 0; i < sym.dim(); ++i) coeffs.push_back(F(detail::draw_nonzero(rng_, opts_.coefficient_bound)));
            Matrix<F> element = sym.combination(coeffs);
            auto projections = eigenprojections(element, local.gram());
            if (projections.size() < 2) {
                ++resamples_;
                continue;
            }
            for (const auto& p : projections) {
                auto cert = is_orthogonal_projection(local, p, false);
                if (!cert.passes())
                    throw InternalAssertionFailure("eigenprojection failed validation (idempotence " +
                                                   format_double(cert.idempotence.max_abs) + ", centroid " +
                                                   format_double(cert.centroid.max_abs) + ", symmetry " +
                                                   format_double(cert.symmetry.max_abs) + ")");
                auto image = Subspace<F>::image(p);
                auto sub = restrict(local, image);
                Matrix<F> sub_lift = lift * image.basis_matrix();
                Matrix<F> sub_read = image.coordinate_map() * read;
                Matrix<F> sub_proj = lift * p * read * proj;
                split(sub, sub_lift, sub_read, sub_proj, out);
            }
            return;
        }
        throw GenericityFailure("no separating symmetric centroid element after " +
                                std::to_string(opts_.max_resamples) + " resamples");
    }

    const MetricLieAlgebra<F>& root_;
    DecomposeOptions opts_;
    std::mt19937_64 rng_;
    std::size_t resamples_ = 0;
};

}  // namespace detail

/// Unique decomposition into irreducible orthogonal factors, sorted by
/// (dimension, canonical carrier basis). Refuses algebras with an abelian
/// factor. On the exact backend throws NumericFallbackRequired when the
/// factors are not defined over the rationals; see decompose_any.
template <typename F>
Decomposition<F> decompose(const MetricLieAlgebra<F>& a, const DecomposeOptions& opts = {}) {
    if (has_abelian_factor(a))
        throw AbelianFactorPresent("algebra has a non-zero abelian factor; its orthogonal decomposition is not unique");
    return detail::Decomposer<F>(a, opts).run();
}

using AnyDecomposition = std::variant<Decomposition<Rational>, Decomposition<double>>;

/// Exact decomposition, rerun in float64 when an irreducible factor is only
/// defined over an irrational extension.
inline AnyDecomposition decompose_any(const MetricLieAlgebra<Rational>& a, const DecomposeOptions& opts = {}) {
    try {
        return decompose(a, opts);
    } catch (const NumericFallbackRequired&) {
        return decompose(a.cast<double>(), opts);
    }
}

/// No abelian factor and a one-dimensional symmetric centroid.
template <typename F>
bool is_irreducible(const MetricLieAlgebra<F>& a) {
    if (has_abelian_factor(a))
        throw AbelianFactorPresent("irreducibility is only decided for algebras without abelian factor");
    if (a.dim() == 0) return false;
    return symmetric_centroid(a).dim() == 1;
}

struct DecompositionCertificate {
    Residual projections_sum_to_identity;
    Residual carriers_orthogonal;
    bool carriers_are_ideals = true;
    bool projections_valid = true;
    bool factors_irreducible = true;
    bool passes() const {
        return projections_sum_to_identity.vanishes && carriers_orthogonal.vanishes && carriers_are_ideals &&
               projections_valid && factors_irreducible;
    }
};

/// Re-checks every claim a decomposition makes about the algebra.
template <typename F>
DecompositionCertificate certify(const MetricLieAlgebra<F>& a, const Decomposition<F>& d) {
    DecompositionCertificate c;
    const std::size_t n = a.dim();
    Matrix<F> sum(n, n);
    for (const auto& f : d.factors) sum += f.projection;
    if (n > 0) c.projections_sum_to_identity = Residual::of(Matrix<F>(sum - Matrix<F>::identity(n)));
    for (std::size_t x = 0; x < d.factors.size(); ++x) {
        const auto& fx = d.factors[x];
        c.carriers_are_ideals = c.carriers_are_ideals && is_ideal(a.algebra(), fx.carrier);
        c.projections_valid = c.projections_valid && is_orthogonal_projection(a, fx.projection).passes() &&
                              Subspace<F>::image(fx.projection) == fx.carrier;
        c.factors_irreducible = c.factors_irreducible && d.symmetric_centroid_dims[x] == 1;
        for (std::size_t y = x + 1; y < d.factors.size(); ++y) {
            Matrix<F> cross = fx.carrier.basis_matrix().transpose() * a.gram() * d.factors[y].carrier.basis_matrix();
            c.carriers_orthogonal.merge(Residual::of(cross));
        }
    }
    return c;
}

}  // namespace metriclie
