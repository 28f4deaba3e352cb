#include "lexpcm/metrics.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "lexpcm/baselines.hpp"
#include "lexpcm/rng.hpp"
#include "lexpcm/simulation.hpp"

namespace lexpcm {

double ici(const CompletePcm& a, const CompletePcm& b) {
    if (a.order() != b.order()) throw std::domain_error("matrices differ in order");
    const int n = a.order();
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum += a(i, j) * b(j, i);
    return 100.0 * (sum / (static_cast<double>(n) * n) - 1.0);
}

double consistency_index(const CompletePcm& matrix) {
    const int n = matrix.order();
    return (lambda_max(matrix) - n) / (n - 1);
}

RiTable RiTable::load(std::istream& in) {
    RiTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream row(line);
        int n = 0, m = 0;
        double value = 0.0;
        if (!(row >> n)) continue;  // blank line
        if (!(row >> m >> value) || n < 3 || m < 0 || value < 0.0) {
            throw ConfigError("random-index table line " + std::to_string(line_no) +
                              " is not 'n m value'");
        }
        std::string extra;
        if (row >> extra) {
            throw ConfigError("random-index table line " + std::to_string(line_no) +
                              " has trailing tokens");
        }
        table.set(n, m, value, Provenance::UserSupplied);
    }
    return table;
}

RiTable RiTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open random-index table '" + path + "'");
    return load(in);
}

void RiTable::set(int n, int m, double value, Provenance provenance) {
    entries_[{n, m}] = {value, provenance};
}

std::optional<RiTable::Entry> RiTable::lookup(int n, int m) const {
    auto it = entries_.find({n, m});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

double RiTable::require(int n, int m) const {
    auto e = lookup(n, m);
    if (!e) {
        throw ConfigError("no random-index entry for n=" + std::to_string(n) +
                          ", m=" + std::to_string(m));
    }
    return e->value;
}

double RiTable::ensure(int n, int m, int samples, std::uint64_t seed) {
    auto e = lookup(n, m);
    if (e) return e->value;
    double value = estimate_random_index(n, m, samples, seed);
    set(n, m, value, Provenance::Estimated);
    return value;
}

double cr_incomplete(const IncompletePcm& matrix, const RiTable& ri) {
    if (!is_connected(graph_of(matrix))) {
        throw NonUniqueError("consistency ratio needs a connected comparison graph");
    }
    double ci = consistency_index(cr_optimal_complete(matrix).matrix);
    if (ci <= 1e-12) return 0.0;  // consistent completion exists; forests land here
    return ci / ri.require(matrix.order(), matrix.missing_count());
}

double estimate_random_index(int n, int m, int samples, std::uint64_t seed) {
    if (n < 3) throw ConfigError("random index needs order >= 3");
    if (samples < 1) throw ConfigError("random index needs at least one sample");
    const int pairs = n * (n - 1) / 2;
    if (m < 0 || m > pairs - (n - 1)) {
        throw ConfigError("with m=" + std::to_string(m) + " missing of " + std::to_string(pairs) +
                          " pairs no connected instance exists");
    }
    SplitMix64 root(seed);
    double total = 0.0;
    for (int s = 0; s < samples; ++s) {
        SplitMix64 rng = root.substream(static_cast<std::uint64_t>(s));
        int attempts = 0;
        for (;;) {
            IncompletePcm candidate = random_saaty_incomplete(n, m, rng);
            if (is_connected(graph_of(candidate))) {
                total += consistency_index(cr_optimal_complete(candidate).matrix);
                break;
            }
            if (++attempts > 100000) {
                throw ConfigError("could not draw a connected missing pattern");
            }
        }
    }
    return total / samples;
}

}  // namespace lexpcm
