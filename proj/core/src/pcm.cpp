#include "lexpcm/pcm.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace lexpcm {

namespace {

constexpr double kReciprocityTol = 1e-12;

void check_positive_finite(double v, int i, int j) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") must be positive and finite");
    }
}

bool reciprocal_within_tol(double a, double b) {
    // |a*b - 1| <= tol, i.e. b matches 1/a to relative tolerance.
    return std::abs(a * b - 1.0) <= kReciprocityTol * std::max(1.0, std::abs(a * b));
}

}  // namespace

CompletePcm CompletePcm::from_entries(int n, std::vector<double> entries) {
    if (n < 2) throw std::invalid_argument("matrix order must be at least 2");
    if (entries.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("entry count does not match order");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            check_positive_finite(entries[static_cast<std::size_t>(i) * n + j], i, j);
        }
        if (entries[static_cast<std::size_t>(i) * n + i] != 1.0) {
            throw std::invalid_argument("diagonal entry (" + std::to_string(i + 1) + "," +
                                        std::to_string(i + 1) + ") must equal 1");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double a = entries[static_cast<std::size_t>(i) * n + j];
            double b = entries[static_cast<std::size_t>(j) * n + i];
            if (!reciprocal_within_tol(a, b)) {
                throw std::invalid_argument("entries (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") and (" + std::to_string(j + 1) +
                                            "," + std::to_string(i + 1) + ") are not reciprocal");
            }
        }
    }
    return CompletePcm(n, std::move(entries));
}

IncompletePcm IncompletePcm::from_cells(int n, std::vector<std::optional<double>> cells) {
    if (n < 2) throw std::invalid_argument("matrix order must be at least 2");
    if (cells.size() != static_cast<std::size_t>(n) * n) {
        throw std::invalid_argument("cell count does not match order");
    }
    std::vector<std::pair<int, int>> missing;
    for (int i = 0; i < n; ++i) {
        const auto& diag = cells[static_cast<std::size_t>(i) * n + i];
        if (!diag.has_value() || *diag != 1.0) {
            throw std::invalid_argument("diagonal entry (" + std::to_string(i + 1) + "," +
                                        std::to_string(i + 1) + ") must be known and equal to 1");
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& up = cells[static_cast<std::size_t>(i) * n + j];
            const auto& lo = cells[static_cast<std::size_t>(j) * n + i];
            if (up.has_value() != lo.has_value()) {
                throw std::invalid_argument("cells (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) +
                                            ") and its mirror must be both known or both missing");
            }
            if (up.has_value()) {
                check_positive_finite(*up, i, j);
                check_positive_finite(*lo, j, i);
                if (!reciprocal_within_tol(*up, *lo)) {
                    throw std::invalid_argument("entries (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ") and (" +
                                                std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                                ") are not reciprocal");
                }
            } else {
                missing.emplace_back(i, j);
            }
        }
    }
    return IncompletePcm(n, std::move(cells), std::move(missing));
}

IncompletePcm IncompletePcm::from_complete(const CompletePcm& matrix) {
    int n = matrix.order();
    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = matrix(i, j);
    return from_cells(n, std::move(cells));
}

double IncompletePcm::value(int i, int j) const {
    const auto& c = cells_[static_cast<std::size_t>(i) * n_ + j];
    if (!c.has_value()) {
        throw std::logic_error("cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") is missing");
    }
    return *c;
}

CompletePcm IncompletePcm::to_complete() const {
    if (!complete()) throw std::logic_error("matrix has missing entries");
    return completed_with({});
}

CompletePcm IncompletePcm::completed_with(const std::vector<double>& fills) const {
    if (fills.size() != missing_.size()) {
        throw std::invalid_argument("fill count does not match number of missing cells");
    }
    std::vector<double> entries(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const auto& c = cells_[static_cast<std::size_t>(i) * n_ + j];
            if (c.has_value()) entries[static_cast<std::size_t>(i) * n_ + j] = *c;
        }
    for (std::size_t k = 0; k < missing_.size(); ++k) {
        auto [i, j] = missing_[k];
        entries[static_cast<std::size_t>(i) * n_ + j] = fills[k];
        entries[static_cast<std::size_t>(j) * n_ + i] = 1.0 / fills[k];
    }
    return CompletePcm::from_entries(n_, std::move(entries));
}

bool ComparisonGraph::has_edge(int i, int j) const {
    if (i == j) return false;
    auto e = std::minmax(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::pair<int, int>(e.first, e.second));
}

ComparisonGraph graph_of(const IncompletePcm& matrix) {
    ComparisonGraph g;
    g.n = matrix.order();
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (matrix.known(i, j)) g.edges.emplace_back(i, j);
    return g;
}

std::vector<int> connected_components(const ComparisonGraph& graph) {
    std::vector<std::vector<int>> adj(graph.n);
    for (auto [i, j] : graph.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<int> comp(graph.n, -1);
    int next = 0;
    for (int s = 0; s < graph.n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = next;
                    q.push(v);
                }
        }
        ++next;
    }
    return comp;
}

bool is_connected(const ComparisonGraph& graph) {
    if (graph.n <= 1) return true;
    auto comp = connected_components(graph);
    return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

std::size_t triad_count(int n) {
    if (n < 3) return 0;
    return static_cast<std::size_t>(n) * (n - 1) * (n - 2) / 6;
}

std::vector<Triad> all_triads(int n) {
    std::vector<Triad> out;
    out.reserve(triad_count(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) out.push_back({i, j, k});
    return out;
}

double triad_ti(double a_ij, double a_jk, double a_ik) {
    for (double v : {a_ij, a_jk, a_ik}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error("triad entries must be positive and finite");
        }
    }
    double r = a_ik / (a_ij * a_jk);
    return std::max(r, 1.0 / r);
}

double triad_ki(double a_ij, double a_jk, double a_ik) {
    double r = a_ik / (a_ij * a_jk);
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("triad entries must be positive and finite");
    }
    return std::min(std::abs(1.0 - r), std::abs(1.0 - 1.0 / r));
}

namespace {

template <typename Fn>
double max_over_triads(const CompletePcm& m, Fn&& triad_fn) {
    if (m.order() < 3) throw std::domain_error("inconsistency indices need order >= 3");
    double worst = triad_fn(m(0, 1), m(1, 2), m(0, 2));
    for (const Triad& t : all_triads(m.order())) {
        worst = std::max(worst, triad_fn(m(t.i, t.j), m(t.j, t.k), m(t.i, t.k)));
    }
    return worst;
}

}  // namespace

double matrix_ti(const CompletePcm& matrix) { return max_over_triads(matrix, triad_ti); }

double matrix_ki(const CompletePcm& matrix) { return max_over_triads(matrix, triad_ki); }

ThetaVector ThetaVector::from_values(std::vector<double> values) {
    for (double v : values) {
        if (!(v >= 1.0 - 1e-9) || !std::isfinite(v)) {
            throw std::invalid_argument("theta values must be finite and >= 1");
        }
    }
    std::sort(values.begin(), values.end(), std::greater<double>());
    return ThetaVector(std::move(values));
}

ThetaVector theta_vector(const CompletePcm& matrix) {
    if (matrix.order() < 3) throw std::domain_error("theta vector needs order >= 3");
    std::vector<double> values;
    values.reserve(triad_count(matrix.order()));
    for (const Triad& t : all_triads(matrix.order())) {
        values.push_back(triad_ti(matrix(t.i, t.j), matrix(t.j, t.k), matrix(t.i, t.k)));
    }
    return ThetaVector::from_values(std::move(values));
}

LexOrder lex_compare(const ThetaVector& a, const ThetaVector& b, double tol) {
    if (a.size() != b.size()) throw std::domain_error("theta vectors differ in length");
    for (std::size_t u = 0; u < a.size(); ++u) {
        double d = a[u] - b[u];
        if (std::abs(d) <= tol) continue;
        return d < 0 ? LexOrder::Less : LexOrder::Greater;
    }
    return LexOrder::Equal;
}

}  // namespace lexpcm
