#pragma once

#include <string>
#include <vector>

#include "metriclie/metriclie.hpp"
#include "oracle/brute_force.hpp"

namespace support {

using namespace metriclie;

inline MetricLieAlgebra<Rational> example(const std::string& key) { return example_document(key).validated(); }

/// Bundled metric followed by `extra` seeded random ones (and, for examples
/// carrying j, the same number of random metrics averaged over j).
inline std::vector<MetricLieAlgebra<Rational>> metric_variants(const std::string& key, std::size_t extra,
                                                               std::uint64_t seed = 11) {
    auto doc = example_document(key);
    auto base = doc.validated();
    std::vector<MetricLieAlgebra<Rational>> out{base};
    if (base.dim() == 0) return out;
    for (std::size_t t = 0; t < extra; ++t) {
        auto g = random_gram(base.dim(), seed * 1000 + t).gram();
        out.push_back(base.with_metric(Metric<Rational>(g)));
        if (doc.j) out.push_back(base.with_metric(Metric<Rational>(hermitize(g, *doc.j))));
    }
    return out;
}

inline oracle::Input oracle_input(const MetricLieAlgebra<Rational>& a) {
    oracle::Input in;
    const std::size_t n = a.dim();
    in.n = n;
    in.c.resize(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) in.c[(i * n + j) * n + k] = a.algebra().constant(i, j, k);
    in.gram = oracle::zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) in.gram[i][j] = a.gram()(i, j);
    return in;
}

inline Matrix<Rational> to_matrix(const oracle::Mat& m) {
    const std::size_t n = m.size();
    Matrix<Rational> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m[i][j];
    return out;
}

/// Same set of matrices, exactly.
inline bool same_exact_set(const std::vector<Matrix<Rational>>& a, const std::vector<Matrix<Rational>>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        bool found = false;
        for (const auto& y : b) found = found || x == y;
        if (!found) return false;
    }
    return true;
}

inline double distance(const Matrix<double>& a, const std::vector<std::vector<double>>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b[i][j]));
    return d;
}

struct Comparison {
    bool equal = false;
    bool refused = false;  // library refused (abelian factor)
    bool numeric = false;
    std::size_t library_count = 0;
    std::size_t oracle_count = 0;
    std::string detail;
};

/// Library enumeration against the brute-force oracle. Abelian inputs are
/// expected to be refused by the library and left undetermined by the oracle.
inline Comparison compare_with_oracle(const MetricLieAlgebra<Rational>& a, double tol = 1e-9) {
    Comparison c;
    auto ref = oracle::solve(oracle_input(a));
    c.oracle_count = ref.count();
    if (has_abelian_factor(a)) {
        c.refused = true;
        try {
            enumerate_any(a);
            c.detail = "library did not refuse an abelian factor";
            return c;
        } catch (const AbelianFactorPresent&) {
        }
        c.equal = ref.undetermined || a.dim() == 0;
        if (!c.equal) c.detail = "oracle found a finite set on an algebra with abelian factor";
        return c;
    }
    if (ref.undetermined) {
        c.detail = "oracle could not determine the solution set";
        return c;
    }
    auto e = enumerate_any(a);
    c.library_count = structure_count(e);
    if (e.index() == 0) {
        const auto& list = std::get<0>(e);
        std::vector<Matrix<Rational>> mine, theirs;
        for (const auto& cs : list) mine.push_back(cs.j);
        if (ref.is_exact()) {
            for (const auto& m : ref.exact) theirs.push_back(to_matrix(m));
            c.equal = same_exact_set(mine, theirs);
        } else {
            c.detail = "oracle needed irrational square roots but the library stayed exact";
        }
    } else {
        c.numeric = true;
        const auto& list = std::get<1>(e);
        std::vector<std::vector<std::vector<double>>> theirs = ref.approx;
        if (ref.is_exact())
            for (const auto& m : ref.exact) {
                std::vector<std::vector<double>> d(m.size(), std::vector<double>(m.size()));
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m[i][j].get_d();
                theirs.push_back(d);
            }
        c.equal = list.size() == theirs.size();
        for (const auto& cs : list) {
            bool found = false;
            for (const auto& t : theirs) found = found || distance(cs.j, t) <= tol;
            c.equal = c.equal && found;
        }
    }
    if (!c.equal && c.detail.empty())
        c.detail = "library " + std::to_string(c.library_count) + " vs oracle " + std::to_string(c.oracle_count);
    return c;
}

}  // namespace support
