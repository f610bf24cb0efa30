#pragma once

// Bundled example algebras, addressable by key.

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "metriclie/io.hpp"

namespace metriclie {

struct ExampleEntry {
    std::string key;
    std::string description;
    std::function<io::AlgebraDocument()> build;
};

namespace detail {

struct Rel {
    std::size_t i, j, k;  // 1-based: [X_i, X_j] += c X_k
    Rational c;
};

inline io::AlgebraDocument make_doc(std::string name, std::size_t n, std::vector<std::string> labels,
                                    std::initializer_list<Rel> rels) {
    LieAlgebra<Rational>::Table t;
    for (const auto& r : rels) t[{r.i - 1, r.j - 1}].push_back({r.k - 1, r.c});
    io::AlgebraDocument d;
    d.name = std::move(name);
    d.algebra = LieAlgebra<Rational>(n, std::move(labels), std::move(t));
    d.gram = Matrix<Rational>::identity(n);
    return d;
}

/// Operator from images of basis vectors: image[i] = {(k, c)} meaning X_i ↦ Σ c X_k (1-based).
inline Matrix<Rational> from_images(std::size_t n,
                                    std::initializer_list<std::initializer_list<std::pair<std::size_t, int>>> images) {
    Matrix<Rational> m(n, n);
    std::size_t col = 0;
    for (const auto& img : images) {
        for (const auto& [k, c] : img) m(k - 1, col) += Rational(c);
        ++col;
    }
    return m;
}

// X1..X6 with [1,3]=5, [1,4]=6, [2,3]=6, [2,4]=-5: the underlying real algebra of complex h3
inline io::AlgebraDocument heisenberg_complex(std::string name, std::vector<std::string> labels) {
    return make_doc(std::move(name), 6, std::move(labels),
                    {{1, 3, 5, 1}, {1, 4, 6, 1}, {2, 3, 6, 1}, {2, 4, 5, -1}});
}

inline Matrix<Rational> pairwise_rotation(std::size_t n) {
    Matrix<Rational> j(n, n);
    for (std::size_t p = 0; p + 1 < n; p += 2) {
        j(p + 1, p) = 1;
        j(p, p + 1) = -1;
    }
    return j;
}

inline io::AlgebraDocument h3c_document(std::string name) {
    auto d = heisenberg_complex(std::move(name), {"E1", "E2", "E3", "E4", "E5", "E6"});
    d.j = pairwise_rotation(6);
    return d;
}

inline io::AlgebraDocument doc_sum(const io::AlgebraDocument& a, const io::AlgebraDocument& b, std::string name) {
    io::AlgebraDocument d;
    d.name = std::move(name);
    d.algebra = direct_sum(a.algebra, b.algebra);
    d.gram = block_diagonal(a.gram, b.gram);
    if (a.j && b.j) d.j = block_diagonal(*a.j, *b.j);
    return d;
}

}  // namespace detail

/// First and second complex structure of the non-commuting example (both
/// orthogonal for the identity metric): J1 rotates pairs, J2 differs by
/// X1 ↦ X2 + X6, X2 ↦ -X1 + X5.
inline std::pair<Matrix<Rational>, Matrix<Rational>> ex48_structures() {
    auto j1 = detail::pairwise_rotation(6);
    auto j2 = detail::from_images(6, {{{2, 1}, {6, 1}}, {{1, -1}, {5, 1}}, {{4, 1}}, {{3, -1}}, {{6, 1}}, {{5, -1}}});
    return {j1, j2};
}

inline const std::vector<ExampleEntry>& examples() {
    using detail::make_doc;
    static const std::vector<ExampleEntry> list = {
        {"abelian2n", "abelian R^4 (every metric; no unique decomposition)",
         [] { return make_doc("abelian2n", 4, {}, {}); }},
        {"h3", "Heisenberg algebra [X,Y]=Z, orthonormal basis",
         [] { return make_doc("h3", 3, {"X", "Y", "Z"}, {{1, 2, 3, 1}}); }},
        {"h3c", "complex Heisenberg algebra as a real algebra on E1..E6 with multiplication by i",
         [] { return detail::h3c_document("h3c"); }},
        {"h3c-perturbed", "h3c with <E5,E6> = 1/2; admits no orthogonal complex structure",
         [] {
             auto d = detail::heisenberg_complex("h3c-perturbed", {"E1", "E2", "E3", "E4", "E5", "E6"});
             d.gram(4, 5) = d.gram(5, 4) = Rational(1, 2);
             return d;
         }},
        {"h3c2", "two orthogonal copies of h3c",
         [] {
             auto a = detail::h3c_document("h3c");
             return detail::doc_sum(a, a, "h3c2");
         }},
        {"ex48", "X1..X6 with two non-commuting orthogonal complex structures; j is the first",
         [] {
             auto d = detail::heisenberg_complex("ex48", {});
             d.j = ex48_structures().first;
             return d;
         }},
        {"h3h3", "h3 + h3 on X1,X2,Y1,Y2,Z1,Z2 with [Xj,Yj]=Zj, orthonormal",
         [] { return make_doc("h3h3", 6, {"X1", "X2", "Y1", "Y2", "Z1", "Z2"}, {{1, 3, 5, 1}, {2, 4, 6, 1}}); }},
        {"h3h3-paper-metric", "h3 + h3 with X1,X2,Y1,Y2,Z1,Z1-Z2 orthonormal (irreducible)",
         [] {
             auto d = make_doc("h3h3-paper-metric", 6, {"X1", "X2", "Y1", "Y2", "Z1", "Z2"},
                               {{1, 3, 5, 1}, {2, 4, 6, 1}});
             d.gram(4, 5) = d.gram(5, 4) = 1;
             d.gram(5, 5) = 2;
             return d;
         }},
        {"sl2c-real", "sl(2,C) as a real algebra on H,E,F,iH,iE,iF",
         [] {
             auto d = make_doc("sl2c-real", 6, {"H", "E", "F", "iH", "iE", "iF"},
                               {{1, 2, 2, 2},  {1, 3, 3, -2}, {2, 3, 1, 1},  {1, 5, 5, 2},  {1, 6, 6, -2},
                                {2, 6, 4, 1},  {3, 5, 4, -1}, {2, 4, 5, -2}, {3, 4, 6, 2},  {4, 5, 2, -2},
                                {4, 6, 3, 2},  {5, 6, 1, -1}});
             Matrix<Rational> j(6, 6);
             for (std::size_t k = 0; k < 3; ++k) {
                 j(k + 3, k) = 1;
                 j(k, k + 3) = -1;
             }
             d.j = j;
             return d;
         }},
        {"h3-sqrt2", "h3 over Q(sqrt 2) on X,Y,Z,rX,rY,rZ (r = sqrt 2) with the trace form; factors are irrational",
         [] {
             auto d = make_doc("h3-sqrt2", 6, {"X", "Y", "Z", "rX", "rY", "rZ"},
                               {{1, 2, 3, 1}, {1, 5, 6, 1}, {2, 4, 6, -1}, {4, 5, 3, 2}});
             for (std::size_t i = 0; i < 6; ++i) d.gram(i, i) = i < 3 ? 2 : 4;
             return d;
         }},
        {"h3c-root2", "h3 over Q(sqrt -2) on X,sX,Y,sY,Z,sZ (s^2 = -2); the complex structure is irrational",
         [] {
             auto d = make_doc("h3c-root2", 6, {"X", "sX", "Y", "sY", "Z", "sZ"},
                               {{1, 3, 5, 1}, {1, 4, 6, 1}, {2, 3, 6, 1}, {2, 4, 5, -2}});
             for (std::size_t i = 1; i < 6; i += 2) d.gram(i, i) = 2;
             return d;
         }},
    };
    return list;
}

inline const ExampleEntry& find_example(const std::string& key) {
    for (const auto& e : examples())
        if (e.key == key) return e;
    throw UnknownExample("unknown example '" + key + "'");
}

inline io::AlgebraDocument example_document(const std::string& key) { return find_example(key).build(); }

inline std::vector<std::string> example_keys() {
    std::vector<std::string> keys;
    for (const auto& e : examples()) keys.push_back(e.key);
    return keys;
}

}  // namespace metriclie
