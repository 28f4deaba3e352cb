#include "lexpcm/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lexpcm/baselines.hpp"
#include "lexpcm/lex_completion.hpp"

namespace lexpcm {

namespace {

// The 17-value Saaty scale 1/9 .. 1/2, 1, 2 .. 9.
double saaty_value(std::uint32_t index) {
    if (index < 8) return 1.0 / static_cast<double>(9 - index);
    return static_cast<double>(index - 7);
}

std::string fnv1a_digest(const IncompletePcm& m) {
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        for (std::size_t b = 0; b < len; ++b) {
            h ^= p[b];
            h *= 1099511628211ULL;
        }
    };
    for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) {
            double v = m.known(i, j) ? m.value(i, j) : -1.0;
            feed(&v, sizeof(v));
        }
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double quantile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * (sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - lo;
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

SimConfig preset_config(const std::string& name) {
    SimConfig c;
    c.label = name;
    if (name == "case-5-1") {
        c.n = 5;
        c.m = 1;
        c.target_count = 500;
    } else if (name == "case-5-2") {
        c.n = 5;
        c.m = 2;
        c.target_count = 500;
    } else if (name == "case-6-6") {
        c.n = 6;
        c.m = 6;
        c.target_count = 100;
    } else if (name == "case-10-1") {
        c.n = 10;
        c.m = 1;
        c.cr_threshold = 0.5;
        c.target_count = 100;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"case-5-1", "case-5-2", "case-6-6", "case-10-1"};
}

IncompletePcm random_saaty_incomplete(int n, int m, SplitMix64& rng) {
    const int pairs = n * (n - 1) / 2;
    if (n < 3 || m < 0 || m >= pairs + 1) throw std::invalid_argument("invalid (n, m)");

    std::vector<std::pair<int, int>> positions;
    positions.reserve(pairs);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) positions.emplace_back(i, j);
    // Partial Fisher-Yates: the first m slots become the missing cells.
    for (int k = 0; k < m; ++k) {
        std::uint32_t pick = k + rng.next_below(static_cast<std::uint32_t>(pairs - k));
        std::swap(positions[k], positions[pick]);
    }
    std::vector<bool> missing(static_cast<std::size_t>(n) * n, false);
    for (int k = 0; k < m; ++k) {
        auto [i, j] = positions[k];
        missing[static_cast<std::size_t>(i) * n + j] = true;
        missing[static_cast<std::size_t>(j) * n + i] = true;
    }

    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (missing[static_cast<std::size_t>(i) * n + j]) continue;
            double v = saaty_value(rng.next_below(17));
            cells[static_cast<std::size_t>(i) * n + j] = v;
            cells[static_cast<std::size_t>(j) * n + i] = 1.0 / v;
        }
    }
    return IncompletePcm::from_cells(n, std::move(cells));
}

SimOutput run_experiment(const SimConfig& config) {
    if (config.n < 3 || config.m <= 0 || config.m >= config.n * (config.n - 1) / 2 ||
        config.target_count < 1 || !(config.cr_threshold >= 0.0)) {
        throw ConfigError("invalid simulation configuration");
    }
    RiTable local;
    RiTable* ri = config.ri_source ? config.ri_source : &local;
    double ri_value = ri->ensure(config.n, config.m);
    (void)ri_value;

    SimOutput out;
    SimSummary& s = out.summary;
    SplitMix64 root(config.seed);
    const std::uint64_t max_generations =
        1000ULL * static_cast<std::uint64_t>(config.target_count);

    for (std::uint64_t g = 0; static_cast<int>(out.records.size()) < config.target_count; ++g) {
        if (g >= max_generations) {
            throw std::runtime_error("generation guard tripped after " + std::to_string(g) +
                                     " candidates; accepted only " +
                                     std::to_string(out.records.size()) + " of " +
                                     std::to_string(config.target_count));
        }
        ++s.generated;
        SplitMix64 rng = root.substream(g);
        IncompletePcm candidate = random_saaty_incomplete(config.n, config.m, rng);

        if (!is_connected(graph_of(candidate))) {
            ++s.rejected_disconnected;
            continue;
        }
        CompletionResult cr_fill = cr_optimal_complete(candidate);
        double ci = consistency_index(cr_fill.matrix);
        double cr = ci <= 1e-12 ? 0.0 : ci / ri->require(config.n, config.m);
        if (cr > config.cr_threshold) {
            ++s.rejected_cr;
            continue;
        }
        bool in_band = true;
        std::vector<double> cr_values;
        for (auto [i, j] : candidate.missing_positions()) {
            double v = cr_fill.matrix(i, j);
            cr_values.push_back(v);
            if (v < config.guard_low || v > config.guard_high) in_band = false;
        }
        if (!in_band) {
            ++s.rejected_guard;
            continue;
        }

        CompletionResult lex_fill = lex_complete(candidate);
        SimRecord rec;
        rec.generation_index = g;
        rec.digest = fnv1a_digest(candidate);
        rec.missing = candidate.missing_positions();
        rec.cr_of_incomplete = cr;
        rec.ici_lex_vs_cr = ici(lex_fill.matrix, cr_fill.matrix);
        for (auto [i, j] : candidate.missing_positions()) {
            rec.lex_fills.push_back(lex_fill.matrix(i, j));
        }
        rec.cr_fills = std::move(cr_values);
        rec.passed_connectivity = rec.passed_cr_filter = rec.passed_guard_band = true;
        out.records.push_back(std::move(rec));
    }

    std::vector<double> icis;
    for (const auto& r : out.records) icis.push_back(r.ici_lex_vs_cr);
    std::sort(icis.begin(), icis.end());
    s.accepted = static_cast<int>(icis.size());
    double total = 0.0;
    int below = 0;
    for (double v : icis) {
        total += v;
        if (v < 10.0) ++below;
    }
    s.ici_mean = total / s.accepted;
    s.ici_median = quantile(icis, 0.5);
    s.ici_q1 = quantile(icis, 0.25);
    s.ici_q3 = quantile(icis, 0.75);
    s.ici_max = icis.back();
    s.frac_below_10 = static_cast<double>(below) / s.accepted;
    return out;
}

void write_csv(std::ostream& out, const SimConfig& config, const std::vector<SimRecord>& records) {
    out << "case,index,digest,cr";
    for (int k = 1; k <= config.m; ++k) {
        out << ",pos_" << k << ",lex_fill_" << k << ",eig_fill_" << k;
    }
    out << ",ici\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    for (const auto& r : records) {
        out << config.label << ',' << r.generation_index << ',' << r.digest << ','
            << num(r.cr_of_incomplete);
        for (std::size_t k = 0; k < r.missing.size(); ++k) {
            out << ',' << r.missing[k].first + 1 << '-' << r.missing[k].second + 1 << ','
                << num(r.lex_fills[k]) << ',' << num(r.cr_fills[k]);
        }
        out << ',' << num(r.ici_lex_vs_cr) << "\n";
    }
}

void write_summary(std::ostream& out, const SimConfig& config, const SimSummary& s) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    out << "{\n"
        << "  \"case\": \"" << config.label << "\",\n"
        << "  \"n\": " << config.n << ",\n"
        << "  \"m\": " << config.m << ",\n"
        << "  \"cr_threshold\": " << num(config.cr_threshold) << ",\n"
        << "  \"seed\": " << config.seed << ",\n"
        << "  \"generated\": " << s.generated << ",\n"
        << "  \"rejected_disconnected\": " << s.rejected_disconnected << ",\n"
        << "  \"rejected_cr\": " << s.rejected_cr << ",\n"
        << "  \"rejected_guard_band\": " << s.rejected_guard << ",\n"
        << "  \"accepted\": " << s.accepted << ",\n"
        << "  \"ici_mean\": " << num(s.ici_mean) << ",\n"
        << "  \"ici_quartiles\": [" << num(s.ici_q1) << ", " << num(s.ici_median) << ", "
        << num(s.ici_q3) << "],\n"
        << "  \"ici_max\": " << num(s.ici_max) << ",\n"
        << "  \"share_below_10\": " << num(s.frac_below_10) << "\n"
        << "}\n";
}

}  // namespace lexpcm
