#pragma once

// Inner products that realize prescribed factor counts and complex structure
// counts on a fixed Lie algebra, plus a seeded scan over random metrics.
//
// Generic metrics are produced by seeded sampling and every construction is
// verified by running the decomposition on the result; a failed verification
// resamples, up to a fixed retry budget.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "metriclie/complex_structures.hpp"

namespace metriclie {

struct GramOptions {
    int spread = 5;                // integer entries of R in [-spread, spread]
    Rational epsilon{1, 10};       // B = I + epsilon R
    int max_retries = 20;
};

/// G = BᵀB with B = I + ε R for a seeded random integer matrix R. Samples with
/// a singular B or an orthogonal pair of basis vectors are redrawn.
inline Metric<Rational> random_gram(std::size_t n, std::uint64_t seed, const GramOptions& opts = {}) {
    if (n == 0) throw InvalidArgument("random_gram needs n >= 1");
    if (opts.spread < 0) throw InvalidArgument("spread must be non-negative");
    const auto width = static_cast<std::uint64_t>(2 * opts.spread + 1);
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::mt19937_64 rng(detail::mix64(seed + 0x632be59bd9b4e019ULL * attempt));
        Matrix<Rational> b = Matrix<Rational>::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto r = static_cast<long>(rng() % width) - opts.spread;
                b(i, j) += opts.epsilon * r;
            }
        Matrix<Rational> g = b.transpose() * b;
        bool orthogonal_pair = false;
        for (std::size_t i = 0; i < n && opts.spread > 0; ++i)
            for (std::size_t j = i + 1; j < n; ++j) orthogonal_pair = orthogonal_pair || sgn(g(i, j)) == 0;
        if (orthogonal_pair || sgn(determinant(b)) == 0) continue;
        return Metric<Rational>(g);
    }
}

/// (G + JᵀGJ)/2, the closest metric for which J is an isometry.
inline Matrix<Rational> hermitize(const Matrix<Rational>& g, const Matrix<Rational>& j) {
    return Matrix<Rational>(g + j.transpose() * g * j) * Rational(1, 2);
}

/// FNV-1a over the serialized entries; stable across platforms.
template <typename F>
std::uint64_t gram_hash(const Matrix<F>& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    for (const auto& x : g.data()) feed(format_scalar(x));
    return h;
}

/// Blocks assumed indecomposable with [block, block] != 0. A block may carry a
/// complex structure (for real forms of complex algebras).
struct BlockSpec {
    std::vector<MetricLieAlgebra<Rational>> blocks;
    std::vector<std::optional<Matrix<Rational>>> structures;  // empty or one per block
    std::uint64_t seed = 0;

    std::size_t k() const { return blocks.size(); }
};

namespace detail {

inline void check_blocks(const BlockSpec& spec) {
    if (spec.blocks.empty()) throw InvalidArgument("at least one block is required");
    for (const auto& b : spec.blocks)
        if (derived_subalgebra(b).is_zero())
            throw AbelianBlock("block '" + b.name() + "' is abelian; every block needs [b, b] != 0");
}

inline MetricLieAlgebra<Rational> sum_blocks(const std::vector<MetricLieAlgebra<Rational>>& blocks) {
    MetricLieAlgebra<Rational> acc = blocks.front();
    for (std::size_t i = 1; i < blocks.size(); ++i) acc = direct_sum(acc, blocks[i]);
    return acc;
}

inline std::optional<Matrix<Rational>> sum_structures(const BlockSpec& spec, std::size_t from, std::size_t to) {
    if (spec.structures.empty()) return std::nullopt;
    std::optional<Matrix<Rational>> acc;
    for (std::size_t i = from; i < to; ++i) {
        if (!spec.structures[i]) return std::nullopt;
        acc = acc ? block_diagonal(*acc, *spec.structures[i]) : *spec.structures[i];
    }
    return acc;
}

}  // namespace detail

struct MetricConstruction {
    MetricLieAlgebra<Rational> algebra;  // blocks' direct sum with the constructed metric
    std::size_t factors = 0;             // verified by decompose
    std::size_t attempts = 0;
    std::uint64_t seed = 0;
    GramOptions options;
    AnyDecomposition decomposition;      // the verifying run
};

/// Metric on the direct sum of the blocks with a single irreducible factor.
/// The Gram matrix is random in a basis adapted to [g, g] ⊕ complement, so its
/// restriction to [g, g] leaves no sub-sum of the blocks' derived algebras
/// orthogonal to the rest. With `hermitian_for`, the metric is averaged so
/// that the given J is orthogonal.
inline MetricConstruction make_irreducible_metric(const BlockSpec& spec, const GramOptions& opts = {},
                                                  const std::optional<Matrix<Rational>>& hermitian_for = std::nullopt) {
    detail::check_blocks(spec);
    auto base = detail::sum_blocks(spec.blocks);
    if (has_abelian_factor(base)) throw AbelianFactorPresent("direct sum of the blocks has an abelian factor");
    const std::size_t n = base.dim();

    auto derived = derived_subalgebra(base);
    std::vector<Vector<Rational>> cols = derived.basis();
    std::vector<bool> used(n, false);
    for (auto p : derived.pivots()) used[p] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) cols.push_back(unit_vector<Rational>(n, i));
    auto adapted = Matrix<Rational>::from_columns(n, cols);
    auto inv = inverse(adapted);
    if (!inv) throw InternalAssertionFailure("adapted basis is singular");

    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        std::uint64_t s = detail::mix64(spec.seed) ^ detail::mix64(static_cast<std::uint64_t>(attempt) + 1);
        Matrix<Rational> g = inv->transpose() * random_gram(n, s, opts).gram() * (*inv);
        if (hermitian_for) g = hermitize(g, *hermitian_for);
        auto candidate = base.with_metric(Metric<Rational>(g));
        auto d = decompose_any(candidate, {.seed = s});
        std::size_t k = std::visit([](const auto& x) { return x.k(); }, d);
        if (k == 1) return {candidate, 1, static_cast<std::size_t>(attempt) + 1, s, opts, std::move(d)};
    }
    throw GenericityFailure("no irreducible metric found in " + std::to_string(opts.max_retries) + " attempts");
}

/// Metric with exactly l irreducible factors: blocks 1..l-1 keep their own
/// metrics and stay orthogonal, blocks l..k are glued into one factor.
inline MetricConstruction make_metric_with_factor_count(const BlockSpec& spec, std::size_t l,
                                                        const GramOptions& opts = {}, bool hermitian = false) {
    detail::check_blocks(spec);
    const std::size_t k = spec.k();
    if (l < 1 || l > k) throw InvalidL("l must satisfy 1 <= l <= " + std::to_string(k));

    BlockSpec glued;
    glued.seed = spec.seed;
    glued.blocks.assign(spec.blocks.begin() + static_cast<std::ptrdiff_t>(l - 1), spec.blocks.end());
    std::optional<Matrix<Rational>> glue_j;
    if (hermitian) {
        glue_j = detail::sum_structures(spec, l - 1, k);
        if (!glue_j) throw NoComplexStructureOnBlock("hermitian construction needs a complex structure on every block");
    }
    auto glue = make_irreducible_metric(glued, opts, glue_j);

    if (l == 1) return glue;
    MetricLieAlgebra<Rational> result = glue.algebra;
    {
        std::vector<MetricLieAlgebra<Rational>> head(spec.blocks.begin(), spec.blocks.begin() + static_cast<std::ptrdiff_t>(l - 1));
        result = direct_sum(detail::sum_blocks(head), glue.algebra);
    }
    auto d = decompose_any(result, {.seed = glue.seed});
    std::size_t factors = std::visit([](const auto& x) { return x.k(); }, d);
    if (factors != l)
        throw InvalidArgument("constructed metric has " + std::to_string(factors) + " factors instead of " +
                              std::to_string(l) + "; a block is not irreducible with its own metric");
    return {result, factors, glue.attempts, glue.seed, opts, std::move(d)};
}

struct JCountReport {
    std::size_t l = 0;
    std::size_t k = 0;        // number of blocks
    std::size_t factors = 0;  // irreducible factors of the constructed metric
    std::size_t count = 0;    // enumerated orthogonal bi-invariant complex structures
    std::size_t expected = 0; // 2^l
    Backend backend = Backend::exact;
    std::size_t attempts = 0;
    std::uint64_t seed = 0;
    MetricLieAlgebra<Rational> algebra;
    GramOptions options;
};

/// Builds an l-factor metric for which the blocks' complex structures stay
/// orthogonal and counts all orthogonal bi-invariant complex structures.
inline JCountReport jcount_experiment(const BlockSpec& spec, std::size_t l, const GramOptions& opts = {}) {
    detail::check_blocks(spec);
    if (spec.structures.size() != spec.blocks.size())
        throw NoComplexStructureOnBlock("every block needs a complex structure");
    for (std::size_t i = 0; i < spec.k(); ++i) {
        if (!spec.structures[i])
            throw NoComplexStructureOnBlock("block '" + spec.blocks[i].name() + "' carries no complex structure");
        if (!verify_complex_structure(spec.blocks[i], *spec.structures[i]).passes())
            throw NoComplexStructureOnBlock("complex structure of block '" + spec.blocks[i].name() + "' fails verification");
    }
    auto built = make_metric_with_factor_count(spec, l, opts, true);
    auto e = enumerate_any(built.algebra, built.decomposition);
    JCountReport r;
    r.l = l;
    r.k = spec.k();
    r.factors = built.factors;
    r.count = structure_count(e);
    r.expected = std::size_t{1} << l;
    r.backend = e.index() == 0 ? Backend::exact : Backend::numeric;
    r.attempts = built.attempts;
    r.seed = built.seed;
    r.algebra = built.algebra;
    r.options = opts;
    if (r.count != r.expected)
        throw InternalAssertionFailure("found " + std::to_string(r.count) + " complex structures, expected " +
                                       std::to_string(r.expected));
    return r;
}

struct ScanTrial {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::uint64_t gram_hash = 0;
    std::size_t k = 0;
    std::size_t jcount = 0;
    Backend backend = Backend::exact;
    double max_residual = 0.0;  // over all certificates of the enumerated structures
};

struct ScanReport {
    std::vector<ScanTrial> trials;
    std::map<std::size_t, std::size_t> histogram;  // jcount -> number of trials
    std::size_t skipped = 0;                        // trials refused for an abelian factor
    GramOptions options;
};

struct ScanOptions {
    std::size_t trials = 10;
    std::uint64_t seed = 0;
    GramOptions gram;
    std::vector<Matrix<Rational>> initial_grams;       // used first, in order
    std::optional<Matrix<Rational>> hermitian_for;     // average every sampled metric over this J
};

/// Per-trial (k, J-count) over seeded random metrics on a fixed Lie algebra.
inline ScanReport metric_scan(const LieAlgebra<Rational>& g, const ScanOptions& opts) {
    ScanReport report;
    report.options = opts.gram;
    const std::size_t n = g.dim();
    if (has_abelian_factor(g)) {
        report.skipped = opts.trials;
        return report;
    }
    for (std::size_t t = 0; t < opts.trials; ++t) {
        ScanTrial trial;
        trial.index = t;
        trial.seed = detail::mix64(opts.seed ^ detail::mix64(t));
        Matrix<Rational> gram = t < opts.initial_grams.size() ? opts.initial_grams[t]
                                                               : random_gram(n, trial.seed, opts.gram).gram();
        if (t >= opts.initial_grams.size() && opts.hermitian_for) gram = hermitize(gram, *opts.hermitian_for);
        MetricLieAlgebra<Rational> a(g, Metric<Rational>(gram));
        trial.gram_hash = gram_hash(gram);
        auto d = decompose_any(a, {.seed = trial.seed});
        trial.k = std::visit([](const auto& x) { return x.k(); }, d);
        auto e = enumerate_any(a, {.seed = trial.seed});
        trial.backend = (d.index() == 0 && e.index() == 0) ? Backend::exact : Backend::numeric;
        std::visit(
            [&](const auto& list) {
                trial.jcount = list.size();
                for (const auto& cs : list)
                    trial.max_residual = std::max({trial.max_residual, cs.certificate.square.max_abs,
                                                   cs.certificate.biinvariance.max_abs, cs.certificate.skew.max_abs});
            },
            e);
        ++report.histogram[trial.jcount];
        report.trials.push_back(trial);
    }
    return report;
}

}  // namespace metriclie
