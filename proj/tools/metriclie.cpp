// metriclie: decompose metric Lie algebras, enumerate orthogonal bi-invariant
// complex structures and run metric experiments.

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "metriclie/metriclie.hpp"

using namespace metriclie;
using io::json;

namespace {

struct Flags {
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::string format = "text";
    std::string backend = "exact";

    bool structured() const { return format == "structured"; }
    bool numeric() const { return backend == "numeric"; }

    json to_json() const {
        return {{"seed", seed}, {"tol", tol}, {"format", format}, {"backend", backend}};
    }
};

Flags flags;

/// A file path, or the key of a bundled example when no such file exists.
io::AlgebraDocument resolve(const std::string& source) {
    if (std::filesystem::exists(source)) return io::load_document(source);
    for (const auto& key : example_keys())
        if (key == source) return example_document(key);
    throw ParseError("cannot read '" + source + "' (no such file or bundled example)");
}

json envelope(const std::string& command, const std::string& input) {
    json doc;
    doc["schema"] = io::schema_version;
    doc["command"] = command;
    doc["input"] = input;
    doc["flags"] = flags.to_json();
    return doc;
}

void emit(json doc, bool numeric_used) {
    if (numeric_used) doc["tol"] = numeric_tolerance();
    std::cout << doc.dump(2) << "\n";
}

template <typename F>
std::string render_matrix(const Matrix<F>& m, const std::string& indent) {
    std::vector<std::string> cells;
    std::size_t width = 1;
    for (const auto& x : m.data()) {
        cells.push_back(format_scalar(x));
        width = std::max(width, cells.back().size());
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << indent;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto& c = cells[i * m.cols() + j];
            out << std::string(width - c.size() + (j ? 1 : 0), ' ') << c;
        }
        out << "\n";
    }
    return out.str();
}

template <typename F>
std::string render_vector(const Vector<F>& v, const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        std::string c = format_scalar(v[i]);
        std::string sign = "+";
        if (c.front() == '-') {
            sign = "-";
            c.erase(0, 1);
        }
        if (out.empty())
            out = sign == "-" ? "-" : "";
        else
            out += " " + sign + " ";
        out += (c == "1" ? "" : c + "*") + labels[i];
    }
    return out.empty() ? "0" : out;
}

int cmd_check(const std::string& source) {
    auto doc = resolve(source);
    const std::size_t n = doc.algebra.dim();
    auto jac = check_jacobi(doc.algebra);
    std::string metric_status = "ok";
    std::size_t minor = 0;
    try {
        Metric<Rational> m(doc.gram);
    } catch (const MetricNotPositiveDefinite& e) {
        metric_status = "not positive definite";
        minor = e.minor_index();
    } catch (const MetricNotSymmetric& e) {
        metric_status = e.what();
    }
    std::optional<ComplexCertificate> jcert;
    if (doc.j && jac.holds && metric_status == "ok") jcert = verify_complex_structure(doc.validated(), *doc.j);
    bool ok = jac.holds && metric_status == "ok" && (!jcert || jcert->passes());

    if (flags.structured()) {
        auto out = envelope("check", source);
        json jr = {{"holds", jac.holds}, {"max_residual", jac.max_residual}};
        if (!jac.holds) jr["triple"] = jac.worst_triple;
        json mr = {{"valid", metric_status == "ok"}, {"status", metric_status}};
        if (minor) mr["failing_minor"] = minor;
        out["result"] = {{"name", doc.name}, {"dim", n}, {"jacobi", jr}, {"metric", mr}, {"passes", ok}};
        if (jcert) out["result"]["j"] = io::certificate_to_json(*jcert);
        emit(out, false);
    } else {
        std::cout << "algebra " << (doc.name.empty() ? source : doc.name) << ", dim " << n << "\n";
        if (jac.holds)
            std::cout << "jacobi: ok\n";
        else
            std::cout << "jacobi: FAILS on triple (" << jac.worst_triple[0] << "," << jac.worst_triple[1] << ","
                      << jac.worst_triple[2] << "), residual " << format_double(jac.max_residual) << "\n";
        std::cout << "metric: " << metric_status;
        if (minor) std::cout << " (leading minor " << minor << ")";
        std::cout << "\n";
        if (jcert) std::cout << "j: " << (jcert->passes() ? "ok" : "FAILS") << "\n";
    }
    return ok ? 0 : 2;
}

template <typename F>
void print_decomposition(const MetricLieAlgebra<F>& a, const Decomposition<F>& d, bool fallback) {
    std::cout << "k = " << d.k() << " irreducible factor" << (d.k() == 1 ? "" : "s") << " (backend "
              << to_string(d.backend) << (fallback ? ", numeric fallback" : "") << ")\n";
    for (std::size_t i = 0; i < d.k(); ++i) {
        const auto& f = d.factors[i];
        std::cout << "factor " << i + 1 << ": dim " << f.carrier.dim() << "\n";
        for (const auto& v : f.carrier.basis()) std::cout << "  " << render_vector(v, a.algebra().labels()) << "\n";
        std::cout << "  projection:\n" << render_matrix(f.projection, "    ");
    }
    std::cout << "certificate: " << (certify(a, d).passes() ? "ok" : "FAILS") << "\n";
}

int cmd_decompose(const std::string& source) {
    auto doc = resolve(source);
    auto a = doc.validated();
    DecomposeOptions opts{.seed = flags.seed};
    AnyDecomposition d = (flags.numeric() || doc.backend == Backend::numeric)
                             ? AnyDecomposition(decompose(a.cast<double>(), opts))
                             : decompose_any(a, opts);
    bool numeric = d.index() == 1;
    bool fallback = numeric && !flags.numeric() && doc.backend == Backend::exact;
    std::visit(
        [&](const auto& dec) {
            using F = std::decay_t<decltype(dec.factors.front().projection(0, 0))>;
            auto local = a.template cast<F>();
            if (flags.structured()) {
                auto out = envelope("decompose", source);
                out["result"] = io::decomposition_to_json(local, dec);
                out["result"]["fallback"] = fallback;
                out["diagnostics"] = {{"resamples", dec.resamples}};
                emit(out, numeric);
            } else {
                print_decomposition(local, dec, fallback);
            }
        },
        d);
    return 0;
}

int cmd_jstructs(const std::string& source) {
    auto doc = resolve(source);
    auto a = doc.validated();
    DecomposeOptions opts{.seed = flags.seed};
    AnyEnumeration e = (flags.numeric() || doc.backend == Backend::numeric)
                           ? AnyEnumeration(enumerate_complex_structures(a.cast<double>(), opts))
                           : enumerate_any(a, opts);
    bool numeric = e.index() == 1;
    bool fallback = numeric && !flags.numeric() && doc.backend == Backend::exact;
    std::visit(
        [&](const auto& list) {
            if (flags.structured()) {
                auto out = envelope("jstructs", source);
                out["result"] = io::enumeration_to_json(list);
                out["result"]["fallback"] = fallback;
                out["result"]["hermitian_form"] = "h(u,v) = (<u,v> + i<u,Jv>)/2";
                emit(out, numeric);
                return;
            }
            std::cout << "count = " << list.size() << " orthogonal bi-invariant complex structure"
                      << (list.size() == 1 ? "" : "s") << " (backend " << (numeric ? "numeric" : "exact")
                      << (fallback ? ", numeric fallback" : "") << ")\n";
            for (const auto& cs : list) {
                std::string signs;
                for (int s : cs.signs) signs += s > 0 ? '+' : '-';
                std::cout << "J [" << signs << "]:\n" << render_matrix(cs.j, "  ");
            }
        },
        e);
    return 0;
}

BlockSpec parse_blocks(const std::string& list) {
    BlockSpec spec;
    spec.seed = flags.seed;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InvalidArgument("empty block name in '" + list + "'");
        auto doc = resolve(item);
        spec.blocks.push_back(doc.validated());
        spec.structures.push_back(doc.j);
    }
    return spec;
}

GramOptions gram_options(int spread) {
    GramOptions o;
    o.spread = spread;
    return o;
}

int cmd_lab_factor_count(const std::string& blocks, std::size_t l, int spread) {
    auto spec = parse_blocks(blocks);
    auto c = make_metric_with_factor_count(spec, l, gram_options(spread));
    if (flags.structured()) {
        auto out = envelope("lab factor-count", blocks);
        out["result"] = io::construction_to_json(c);
        out["result"]["l"] = l;
        emit(out, false);
    } else {
        std::cout << "blocks " << blocks << ", l = " << l << ": k = " << c.factors << " (verified, " << c.attempts
                  << " attempt" << (c.attempts == 1 ? "" : "s") << ", epsilon " << c.options.epsilon.get_str()
                  << ", spread " << c.options.spread << ")\n";
        std::cout << "gram:\n" << render_matrix(c.algebra.gram(), "  ");
    }
    return 0;
}

int cmd_lab_irreducible(const std::string& blocks, int spread) {
    auto spec = parse_blocks(blocks);
    auto c = make_irreducible_metric(spec, gram_options(spread));
    if (flags.structured()) {
        auto out = envelope("lab irreducible", blocks);
        out["result"] = io::construction_to_json(c);
        emit(out, false);
    } else {
        std::cout << "blocks " << blocks << ": irreducible metric (" << c.attempts << " attempt"
                  << (c.attempts == 1 ? "" : "s") << ")\n";
        std::cout << "gram:\n" << render_matrix(c.algebra.gram(), "  ");
    }
    return 0;
}

int cmd_lab_jcount(const std::string& blocks, std::size_t l, int spread) {
    auto spec = parse_blocks(blocks);
    auto r = jcount_experiment(spec, l, gram_options(spread));
    if (flags.structured()) {
        auto out = envelope("lab jcount", blocks);
        out["result"] = io::jcount_to_json(r);
        emit(out, r.backend == Backend::numeric);
    } else {
        std::cout << "blocks " << blocks << ", l = " << l << ": factors " << r.factors << ", complex structures "
                  << r.count << " (expected " << r.expected << ", backend " << to_string(r.backend) << ")\n";
    }
    return 0;
}

int cmd_lab_scan(const std::string& source, std::size_t trials, int spread, bool hermitian,
                 const std::vector<std::string>& include) {
    auto doc = resolve(source);
    doc.validated();
    ScanOptions opts;
    opts.trials = trials;
    opts.seed = flags.seed;
    opts.gram = gram_options(spread);
    for (const auto& s : include) {
        auto extra = resolve(s);
        if (extra.algebra.dim() != doc.algebra.dim())
            throw DimensionMismatch("included metric from '" + s + "' has the wrong dimension");
        opts.initial_grams.push_back(extra.gram);
    }
    if (hermitian) {
        if (!doc.j) throw NoComplexStructureOnBlock("--hermitian needs a document with a 'j' field");
        opts.hermitian_for = doc.j;
    }
    auto r = metric_scan(doc.algebra, opts);
    bool numeric = false;
    for (const auto& t : r.trials) numeric = numeric || t.backend == Backend::numeric;
    if (flags.structured()) {
        auto out = envelope("lab scan", source);
        out["result"] = io::scan_to_json(r);
        emit(out, numeric);
        return 0;
    }
    std::cout << "trial  seed                  gram_hash         k  jcount  backend  residual\n";
    for (const auto& t : r.trials) {
        std::ostringstream line;
        line << std::left << std::setw(7) << t.index << std::setw(22) << t.seed << std::setw(18) << io::hex64(t.gram_hash)
             << std::setw(3) << t.k << std::setw(8) << t.jcount << std::setw(9) << to_string(t.backend)
             << format_double(t.max_residual);
        std::cout << line.str() << "\n";
    }
    std::cout << "histogram:";
    for (const auto& [count, n] : r.histogram) std::cout << " " << count << ":" << n;
    std::cout << "\n";
    if (r.skipped) std::cout << "skipped " << r.skipped << " trials (abelian factor)\n";
    std::cout << "epsilon " << r.options.epsilon.get_str() << ", spread " << r.options.spread << "\n";
    return 0;
}

int cmd_examples_list() {
    if (flags.structured()) {
        json out = envelope("examples list", "");
        json items = json::array();
        for (const auto& e : examples()) items.push_back({{"key", e.key}, {"description", e.description}});
        out["result"] = items;
        emit(out, false);
    } else {
        for (const auto& e : examples()) std::cout << e.key << "  " << e.description << "\n";
    }
    return 0;
}

int cmd_examples_show(const std::string& key) {
    std::cout << io::render_document(example_document(key)).dump(2) << "\n";
    return 0;
}

int report_error(const Error& e) {
    if (flags.structured()) {
        json err = {{"kind", e.kind()}, {"message", e.what()}, {"exit_code", e.exit_code()}};
        if (auto* j = dynamic_cast<const JacobiViolation*>(&e)) err["triple"] = j->triple();
        if (auto* m = dynamic_cast<const MetricNotPositiveDefinite*>(&e)) err["failing_minor"] = m->minor_index();
        json out = {{"schema", io::schema_version}, {"flags", flags.to_json()}, {"error", err}};
        std::cout << out.dump(2) << "\n";
    }
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return e.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal decompositions and complex structures of metric Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", flags.seed, "seed for generic elements and random metrics");
    app.add_option("--tol", flags.tol, "tolerance of the numeric backend");
    app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--backend", flags.backend, "scalar backend")->check(CLI::IsMember({"exact", "numeric"}));

    std::function<int()> action;
    std::string source, blocks, key;
    std::size_t l = 1, trials = 10;
    int spread = 5;
    bool hermitian = false;
    std::vector<std::string> include;

    auto* check = app.add_subcommand("check", "validate a document (Jacobi identity, metric, j)");
    check->add_option("path", source, "document path or bundled example key")->required();
    check->callback([&] { action = [&] { return cmd_check(source); }; });

    auto* dec = app.add_subcommand("decompose", "unique orthogonal decomposition into irreducible factors");
    dec->add_option("path", source, "document path or bundled example key")->required();
    dec->callback([&] { action = [&] { return cmd_decompose(source); }; });

    auto* js = app.add_subcommand("jstructs", "all orthogonal bi-invariant complex structures");
    js->add_option("path", source, "document path or bundled example key")->required();
    js->callback([&] { action = [&] { return cmd_jstructs(source); }; });

    auto* lab = app.add_subcommand("lab", "metric experiments");
    lab->require_subcommand(1);
    auto* fc = lab->add_subcommand("factor-count", "metric with exactly l irreducible factors");
    fc->add_option("--blocks", blocks, "comma separated keys or paths")->required();
    fc->add_option("--l", l, "number of factors")->required();
    fc->add_option("--spread", spread, "entry range of the random Gram perturbation");
    fc->callback([&] { action = [&] { return cmd_lab_factor_count(blocks, l, spread); }; });

    auto* irr = lab->add_subcommand("irreducible", "metric making the direct sum of the blocks irreducible");
    irr->add_option("--blocks", blocks, "comma separated keys or paths")->required();
    irr->add_option("--spread", spread, "entry range of the random Gram perturbation");
    irr->callback([&] { action = [&] { return cmd_lab_irreducible(blocks, spread); }; });

    auto* jc = lab->add_subcommand("jcount", "count complex structures for an l-factor metric");
    jc->add_option("--blocks", blocks, "comma separated keys or paths of blocks carrying j")->required();
    jc->add_option("--l", l, "number of factors")->required();
    jc->add_option("--spread", spread, "entry range of the random Gram perturbation");
    jc->callback([&] { action = [&] { return cmd_lab_jcount(blocks, l, spread); }; });

    auto* scan = lab->add_subcommand("scan", "k and complex structure count over random metrics");
    scan->add_option("--algebra", source, "document path or bundled example key")->required();
    scan->add_option("--trials", trials, "number of trials");
    scan->add_option("--spread", spread, "entry range of the random Gram perturbation");
    scan->add_flag("--hermitian", hermitian, "average each metric so that the document's j is orthogonal");
    scan->add_option("--include", include, "documents whose Gram matrices are used as the first trials");
    scan->callback([&] { action = [&] { return cmd_lab_scan(source, trials, spread, hermitian, include); }; });

    auto* ex = app.add_subcommand("examples", "bundled example algebras");
    ex->require_subcommand(1);
    ex->add_subcommand("list", "list keys")->callback([&] { action = [&] { return cmd_examples_list(); }; });
    auto* show = ex->add_subcommand("show", "print the document of an example");
    show->add_option("key", key, "example key")->required();
    show->callback([&] { action = [&] { return cmd_examples_show(key); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    try {
        if (!(flags.tol > 0.0)) throw InvalidArgument("--tol must be positive");
        set_numeric_tolerance(flags.tol);
        return action();
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 4;
    }
}
