// lexpcm: analyze, complete and compare incomplete pairwise comparison
// matrices, and run the batch completion-similarity experiment.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexpcm/baselines.hpp"
#include "lexpcm/lex_completion.hpp"
#include "lexpcm/matrix_io.hpp"
#include "lexpcm/metrics.hpp"
#include "lexpcm/pcm.hpp"
#include "lexpcm/simulation.hpp"

namespace {

using namespace lexpcm;

// Exit codes: 0 ok, 1 usage, 2 parse/validation, 3 numeric or non-unique.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitNumeric = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

int cmd_analyze(const std::string& path, int precision) {
    IncompletePcm m = parse_matrix_file(path);
    bool connected = is_connected(graph_of(m));
    std::cout << "order: " << m.order() << "\n"
              << "missing: " << m.missing_count() << "\n"
              << "connected: " << yesno(connected) << "\n"
              << "unique completion: " << yesno(check_uniqueness(m)) << "\n";
    if (m.complete()) {
        auto full = m.to_complete();
        if (m.order() < 3) {
            // no triads at order 2; trivially consistent
            std::cout << "KI: " << fmt(0.0, precision) << "\n"
                      << "TI: " << fmt(1.0, precision) << "\n"
                      << "CI: " << fmt(0.0, precision) << "\n";
        } else {
            std::cout << "KI: " << fmt(matrix_ki(full), precision) << "\n"
                      << "TI: " << fmt(matrix_ti(full), precision) << "\n"
                      << "CI: " << fmt(consistency_index(full), precision) << "\n";
        }
    }
    return kExitOk;
}

CompletionResult complete_by(const IncompletePcm& m, const std::string& method) {
    if (method == "lex") return lex_complete(m);
    if (method == "eig") return cr_optimal_complete(m);
    if (method == "lls") return lls_optimal_complete(m);
    throw UsageError("unknown method '" + method + "'");
}

int cmd_complete(const std::string& path, const std::string& method, const std::string& out_path,
                 bool allow_nonunique, int precision) {
    IncompletePcm m = parse_matrix_file(path);
    if (m.order() < 3) throw std::domain_error("completion needs order >= 3");
    if (!check_uniqueness(m) && !allow_nonunique) {
        throw NonUniqueError(
            "the comparison graph is disconnected, so the completion is not unique "
            "(pass --allow-nonunique to proceed)");
    }
    if (method == "all") {
        if (!out_path.empty()) throw UsageError("--out needs a single method");
        std::map<std::string, CompletionResult> fills;
        for (const char* name : {"lex", "eig", "lls"}) {
            fills.emplace(name, complete_by(m, name));
            std::cout << format_completion(fills.at(name), precision) << "\n";
        }
        std::cout << "ici lex-eig: " << fmt(ici(fills.at("lex").matrix, fills.at("eig").matrix), precision)
                  << "\n";
        std::cout << "ici lex-lls: " << fmt(ici(fills.at("lex").matrix, fills.at("lls").matrix), precision)
                  << "\n";
        std::cout << "ici eig-lls: " << fmt(ici(fills.at("eig").matrix, fills.at("lls").matrix), precision)
                  << "\n";
        return kExitOk;
    }
    CompletionResult result = complete_by(m, method);
    std::cout << format_completion(result, precision);
    if (!out_path.empty()) write_matrix_file(out_path, result.matrix);
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, int precision) {
    IncompletePcm a = parse_matrix_file(path_a);
    IncompletePcm b = parse_matrix_file(path_b);
    if (!a.complete() || !b.complete()) {
        throw std::invalid_argument("compare needs two complete matrices; run 'complete' first");
    }
    auto fa = a.to_complete(), fb = b.to_complete();
    std::cout << "ici: " << fmt(ici(fa, fb), precision) << "\n";
    if (fa.order() >= 3) {
        std::cout << "ti a: " << fmt(matrix_ti(fa), precision)
                  << "\nti b: " << fmt(matrix_ti(fb), precision) << "\n";
    }
    return kExitOk;
}

void print_weights(const char* scheme, const WeightVector& w, int precision) {
    std::cout << "weights (" << scheme << "):";
    for (double v : w.weights) std::cout << ' ' << fmt(v, precision);
    std::cout << "\nranks (" << scheme << "):";
    // rank 1 = greatest weight
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        int rank = 1;
        for (std::size_t j = 0; j < w.weights.size(); ++j) {
            if (w.weights[j] > w.weights[i]) ++rank;
        }
        std::cout << ' ' << rank;
    }
    std::cout << "\n";
}

int cmd_weights(const std::string& path, const std::string& scheme, const std::string& method,
                int precision) {
    IncompletePcm m = parse_matrix_file(path);
    CompletePcm full = [&] {
        if (m.complete()) return m.to_complete();
        if (method.empty()) {
            throw UsageError("matrix has missing entries; choose a completion with --method");
        }
        return complete_by(m, method).matrix;
    }();
    if (scheme == "gm" || scheme == "both") print_weights("gm", gm_weights(full), precision);
    if (scheme == "em" || scheme == "both") print_weights("em", em_weights(full), precision);
    return kExitOk;
}

int cmd_simulate(SimConfig cfg, const std::string& ri_path, const std::string& out_path) {
    RiTable table;
    if (!ri_path.empty()) table = RiTable::load_file(ri_path);
    cfg.ri_source = &table;
    if (!table.lookup(cfg.n, cfg.m)) {
        std::cerr << "estimating the (" << cfg.n << ", " << cfg.m
                  << ") random index by simulation...\n";
    }
    SimOutput out = run_experiment(cfg);
    if (out_path.empty()) {
        write_csv(std::cout, cfg, out.records);
        write_summary(std::cerr, cfg, out.summary);
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
        write_csv(file, cfg, out.records);
        write_summary(std::cout, cfg, out.summary);
    }
    return kExitOk;
}

int cmd_estimate_ri(int n, int m, int samples, std::uint64_t seed) {
    double value = estimate_random_index(n, m, samples, seed);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    std::cout << n << ' ' << m << ' ' << buf << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"completion toolkit for incomplete pairwise comparison matrices"};
    app.require_subcommand(1);
    int precision = 4;
    app.add_option("--precision", precision, "printed decimal places")->capture_default_str();

    std::string path, path_b, method = "lex", scheme = "both", out_path, ri_path, preset;

    auto* analyze = app.add_subcommand("analyze", "order, missing pattern, connectivity, indices");
    analyze->add_option("file", path, "matrix file")->required();

    auto* complete = app.add_subcommand("complete", "fill the missing comparisons");
    complete->add_option("file", path, "matrix file")->required();
    complete->add_option("--method", method, "lex, eig, lls or all")->capture_default_str();
    complete->add_option("--out", out_path, "write the completed matrix here");
    bool allow_nonunique = false;
    complete->add_flag("--allow-nonunique", allow_nonunique,
                       "proceed on disconnected comparison graphs");

    auto* compare = app.add_subcommand("compare", "incompatibility of two complete matrices");
    compare->add_option("file_a", path, "first matrix")->required();
    compare->add_option("file_b", path_b, "second matrix")->required();

    auto* weights = app.add_subcommand("weights", "priority vectors on the percent scale");
    weights->add_option("file", path, "matrix file")->required();
    weights->add_option("--scheme", scheme, "gm, em or both")->capture_default_str();
    std::string weights_method;
    weights->add_option("--method", weights_method, "completion for incomplete inputs");

    auto* simulate = app.add_subcommand("simulate", "batch completion-similarity experiment");
    SimConfig cfg;
    simulate->add_option("--preset", preset, "case-5-1, case-5-2, case-6-6 or case-10-1");
    simulate->add_option("--n", cfg.n, "order");
    simulate->add_option("--m", cfg.m, "missing pairs");
    int target = -1;
    simulate->add_option("--target", target, "accepted-sample goal");
    double threshold = -1.0;
    simulate->add_option("--threshold", threshold, "consistency-ratio acceptance bound");
    std::uint64_t seed = 0;
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--ri-table", ri_path, "random-index table file ('n m value' lines)");
    simulate->add_option("--out", out_path, "CSV destination (stdout when omitted)");

    auto* estimate = app.add_subcommand("estimate-ri", "estimate a random-index entry");
    int ri_n = 0, ri_m = 0, ri_samples = 10000;
    estimate->add_option("--n", ri_n, "order")->required();
    estimate->add_option("--m", ri_m, "missing pairs")->required();
    estimate->add_option("--samples", ri_samples, "sample count")->capture_default_str();
    std::uint64_t ri_seed = 20000913;
    estimate->add_option("--seed", ri_seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(path, precision);
        if (complete->parsed()) {
            return cmd_complete(path, method, out_path, allow_nonunique, precision);
        }
        if (compare->parsed()) return cmd_compare(path, path_b, precision);
        if (weights->parsed()) return cmd_weights(path, scheme, weights_method, precision);
        if (simulate->parsed()) {
            if (!preset.empty()) {
                cfg = preset_config(preset);
            } else {
                cfg.label = "case-" + std::to_string(cfg.n) + "-" + std::to_string(cfg.m);
            }
            if (target > 0) cfg.target_count = target;
            if (threshold >= 0.0) cfg.cr_threshold = threshold;
            cfg.seed = seed;
            return cmd_simulate(cfg, ri_path, out_path);
        }
        if (estimate->parsed()) return cmd_estimate_ri(ri_n, ri_m, ri_samples, ri_seed);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonUniqueError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
