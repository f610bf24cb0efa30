#pragma once

// Algebra documents (JSON) and report serialization.
//
// {"schema": 1, "name": "h3", "dim": 3, "field": "rational",
//  "labels": ["X", "Y", "Z"],
//  "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]}],
//  "gram": [["1","0","0"], ...], "j": [[...], ...]}
//
// Indices are 1-based with i < j. Scalars are "p/q" strings, decimal strings
// or JSON numbers; "gram" defaults to the identity, "j" is an optional
// complex structure carried by real forms of complex algebras.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "metriclie/metric_lab.hpp"

namespace metriclie::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Parsed but not yet validated document: structural errors are reported
/// here, axioms (Jacobi, metric) are checked by `validated`.
struct AlgebraDocument {
    std::string name;
    Backend backend = Backend::exact;
    LieAlgebra<Rational> algebra;
    Matrix<Rational> gram;
    std::optional<Matrix<Rational>> j;

    MetricLieAlgebra<Rational> validated() const {
        return MetricLieAlgebra<Rational>(algebra, Metric<Rational>(gram), name);
    }
};

inline Rational scalar_from_json(const json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
    if (v.is_number_unsigned()) return Rational(std::to_string(v.get<unsigned long long>()));
    if (v.is_number_float()) return parse_rational(format_double(v.get<double>()));
    throw ParseError(where + ": expected a scalar");
}

template <typename F>
json scalar_to_json(const F& x) {
    return format_scalar(x);
}

template <typename F>
json vector_to_json(const Vector<F>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(scalar_to_json(x));
    return out;
}

template <typename F>
json matrix_to_json(const Matrix<F>& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (const auto& x : m.row(i)) row.push_back(scalar_to_json(x));
        out.push_back(std::move(row));
    }
    return out;
}

inline Matrix<Rational> matrix_from_json(const json& v, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " rows");
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = v[i];
        if (!row.is_array() || row.size() != n)
            throw ParseError(where + ": row " + std::to_string(i + 1) + " needs " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = scalar_from_json(row[k], where + "[" + std::to_string(i + 1) + "][" + std::to_string(k + 1) + "]");
    }
    return m;
}

namespace detail {

inline std::size_t index_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing '" + key + "'");
    const auto& v = obj[key];
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError(where + ": '" + key + "' must be a positive integer");
    return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace detail

inline AlgebraDocument parse_document(const json& doc) {
    if (!doc.is_object()) throw ParseError("document must be an object");
    if (doc.contains("schema") && doc["schema"] != schema_version)
        throw ParseError("unsupported schema " + doc["schema"].dump());
    AlgebraDocument out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
        out.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 0)
        throw ParseError("'dim' must be a non-negative integer");
    const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
    if (doc.contains("field")) {
        const auto& f = doc["field"];
        if (f == "rational") out.backend = Backend::exact;
        else if (f == "numeric") out.backend = Backend::numeric;
        else throw ParseError("'field' must be \"rational\" or \"numeric\"");
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        const auto& l = doc["labels"];
        if (!l.is_array() || l.size() != n) throw ParseError("'labels' must list " + std::to_string(n) + " strings");
        for (const auto& s : l) {
            if (!s.is_string()) throw ParseError("labels must be strings");
            labels.push_back(s.get<std::string>());
        }
    }
    LieAlgebra<Rational>::Table table;
    if (doc.contains("brackets")) {
        const auto& bs = doc["brackets"];
        if (!bs.is_array()) throw ParseError("'brackets' must be a list");
        for (std::size_t e = 0; e < bs.size(); ++e) {
            const auto& b = bs[e];
            const std::string where = "bracket entry " + std::to_string(e + 1);
            if (!b.is_object()) throw ParseError(where + ": expected an object");
            auto i = detail::index_field(b, "i", where);
            auto j = detail::index_field(b, "j", where);
            if (i > n || j > n) throw ParseError(where + ": index out of range");
            if (i == j) throw ParseError(where + ": diagonal bracket [X" + std::to_string(i) + ",X" + std::to_string(i) + "] is forbidden");
            if (i > j) throw ParseError(where + ": entries must have i < j");
            auto key = std::make_pair(i - 1, j - 1);
            if (table.count(key)) throw ParseError(where + ": duplicate entry for (" + std::to_string(i) + "," + std::to_string(j) + ")");
            auto& terms = table[key];
            if (!b.contains("terms") || !b["terms"].is_array()) throw ParseError(where + ": 'terms' must be a list");
            for (const auto& t : b["terms"]) {
                if (!t.is_object() || !t.contains("c")) throw ParseError(where + ": terms need 'k' and 'c'");
                auto k = detail::index_field(t, "k", where);
                if (k > n) throw ParseError(where + ": term index out of range");
                terms.push_back({k - 1, scalar_from_json(t["c"], where)});
            }
        }
    }
    out.algebra = LieAlgebra<Rational>(n, std::move(labels), std::move(table));
    out.gram = doc.contains("gram") ? matrix_from_json(doc["gram"], n, "gram") : Matrix<Rational>::identity(n);
    if (doc.contains("j") && !doc["j"].is_null()) out.j = matrix_from_json(doc["j"], n, "j");
    return out;
}

inline AlgebraDocument parse_document_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    return parse_document(doc);
}

inline AlgebraDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document_text(ss.str());
}

/// Validated algebra from a document; gram omitted means identity.
inline MetricLieAlgebra<Rational> parse_algebra(const json& doc) { return parse_document(doc).validated(); }

template <typename F>
json render_algebra(const MetricLieAlgebra<F>& a, const std::optional<Matrix<F>>& j = std::nullopt) {
    json doc;
    doc["schema"] = schema_version;
    doc["name"] = a.name();
    doc["dim"] = a.dim();
    doc["field"] = is_exact_v<F> ? "rational" : "numeric";
    doc["labels"] = a.algebra().labels();
    json brackets = json::array();
    for (const auto& [key, terms] : a.algebra().table()) {
        json ts = json::array();
        for (const auto& t : terms) ts.push_back({{"k", t.k + 1}, {"c", scalar_to_json(t.c)}});
        brackets.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"terms", std::move(ts)}});
    }
    doc["brackets"] = std::move(brackets);
    doc["gram"] = matrix_to_json(a.gram());
    if (j) doc["j"] = matrix_to_json(*j);
    return doc;
}

inline json render_document(const AlgebraDocument& d) {
    json doc = render_algebra(d.validated(), d.j);
    doc["field"] = d.backend == Backend::exact ? "rational" : "numeric";
    return doc;
}

template <typename F>
json subspace_to_json(const Subspace<F>& s) {
    json basis = json::array();
    for (const auto& v : s.basis()) basis.push_back(vector_to_json(v));
    return {{"dim", s.dim()}, {"basis", std::move(basis)}};
}

template <typename F>
json decomposition_to_json(const MetricLieAlgebra<F>& a, const Decomposition<F>& d) {
    auto cert = certify(a, d);
    json factors = json::array();
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
        const auto& f = d.factors[i];
        factors.push_back({{"carrier", subspace_to_json(f.carrier)},
                           {"projection", matrix_to_json(f.projection)},
                           {"induced", render_algebra(f.induced)},
                           {"symmetric_centroid_dim", d.symmetric_centroid_dims[i]}});
    }
    return {{"k", d.k()},
            {"backend", to_string(d.backend)},
            {"factors", std::move(factors)},
            {"certificate",
             {{"projections_sum_to_identity", cert.projections_sum_to_identity.max_abs},
              {"carriers_orthogonal", cert.carriers_orthogonal.max_abs},
              {"carriers_are_ideals", cert.carriers_are_ideals},
              {"projections_valid", cert.projections_valid},
              {"factors_irreducible", cert.factors_irreducible},
              {"passes", cert.passes()}}}};
}

inline json certificate_to_json(const ComplexCertificate& c) {
    return {{"square", c.square.max_abs},
            {"biinvariance", c.biinvariance.max_abs},
            {"skew", c.skew.max_abs},
            {"passes", c.passes()}};
}

template <typename F>
json enumeration_to_json(const std::vector<ComplexStructure<F>>& list) {
    json items = json::array();
    for (const auto& cs : list) {
        std::string signs;
        for (int s : cs.signs) signs += s > 0 ? '+' : '-';
        items.push_back({{"signs", signs}, {"j", matrix_to_json(cs.j)}, {"certificate", certificate_to_json(cs.certificate)}});
    }
    return {{"count", list.size()},
            {"backend", to_string(FieldTraits<F>::backend)},
            {"structures", std::move(items)}};
}

inline json gram_options_to_json(const GramOptions& o) {
    return {{"epsilon", o.epsilon.get_str()}, {"spread", o.spread}, {"max_retries", o.max_retries}};
}

inline json construction_to_json(const MetricConstruction& c) {
    return {{"factors", c.factors},
            {"attempts", c.attempts},
            {"seed", c.seed},
            {"gram_options", gram_options_to_json(c.options)},
            {"algebra", render_algebra(c.algebra)}};
}

inline json jcount_to_json(const JCountReport& r) {
    return {{"l", r.l},
            {"k", r.k},
            {"factors", r.factors},
            {"count", r.count},
            {"expected", r.expected},
            {"backend", to_string(r.backend)},
            {"attempts", r.attempts},
            {"seed", r.seed},
            {"gram_options", gram_options_to_json(r.options)},
            {"algebra", render_algebra(r.algebra)}};
}

inline std::string hex64(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) s[static_cast<std::size_t>(i)] = digits[x & 0xf];
    return s;
}

inline json scan_to_json(const ScanReport& r) {
    json trials = json::array();
    for (const auto& t : r.trials)
        trials.push_back({{"trial", t.index},
                          {"seed", t.seed},
                          {"gram_hash", hex64(t.gram_hash)},
                          {"k", t.k},
                          {"jcount", t.jcount},
                          {"backend", to_string(t.backend)},
                          {"max_residual", t.max_residual}});
    json hist = json::object();
    for (const auto& [count, n] : r.histogram) hist[std::to_string(count)] = n;
    return {{"trials", std::move(trials)},
            {"histogram", std::move(hist)},
            {"skipped", r.skipped},
            {"gram_options", gram_options_to_json(r.options)}};
}

}  // namespace metriclie::io
