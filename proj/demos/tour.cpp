// Decomposes h3 + h3 under two metrics, then counts complex structures on a
// lab-built metric.

#include <iostream>

#include "metriclie/metriclie.hpp"

using namespace metriclie;

int main() {
    for (const char* key : {"h3h3", "h3h3-paper-metric"}) {
        auto a = example_document(key).validated();
        auto d = decompose(a);
        std::cout << key << ": k = " << d.k() << "\n";
        for (const auto& f : d.factors) std::cout << "  factor of dim " << f.carrier.dim() << "\n";
    }

    BlockSpec spec;
    spec.seed = 3;
    for (int i = 0; i < 2; ++i) {
        auto doc = example_document("h3c");
        spec.blocks.push_back(doc.validated());
        spec.structures.push_back(doc.j);
    }
    for (std::size_t l = 1; l <= 2; ++l) {
        auto r = jcount_experiment(spec, l);
        std::cout << "h3c + h3c with " << l << " factor(s): " << r.count << " complex structures\n";
    }
}
