#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

using lexpcm::CompletePcm;
using lexpcm::IncompletePcm;
using lexpcm::LpProblem;
using lexpcm::Relation;
using lexpcm::SplitMix64;
using lexpcm::ThetaVector;

namespace {

// Plain Gaussian elimination; returns false when the system is singular.
bool solve_square(std::vector<double> a, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-11) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * x[j];
        x[r] = s / a[r * n + r];
    }
    return true;
}

double det_shifted(const CompletePcm& m, double lambda) {
    const int n = m.order();
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i * n + j] = m(i, j) - (i == j ? lambda : 0.0);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-300) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
            det = -det;
        }
        det *= a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
        }
    }
    return det;
}

}  // namespace

std::optional<double> vertex_enumeration_optimum(const LpProblem& p) {
    const int n = p.num_vars;
    // Hyperplane list: constraint rows as equalities, then finite bounds.
    std::vector<std::vector<double>> planes;
    std::vector<double> rhs;
    for (const auto& c : p.constraints) {
        planes.push_back(c.coeffs);
        rhs.push_back(c.rhs);
    }
    for (int j = 0; j < n; ++j) {
        for (double bound : {p.lower[j], p.upper[j]}) {
            if (!std::isfinite(bound)) continue;
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            planes.push_back(std::move(row));
            rhs.push_back(bound);
        }
    }
    const int h = static_cast<int>(planes.size());
    if (h < n) return std::nullopt;

    std::optional<double> best;
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    auto advance = [&]() {
        int i = n - 1;
        while (i >= 0 && pick[i] == h - n + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };
    do {
        std::vector<double> a(static_cast<std::size_t>(n) * n), b(n), x;
        for (int r = 0; r < n; ++r) {
            for (int j = 0; j < n; ++j) a[r * n + j] = planes[pick[r]][j];
            b[r] = rhs[pick[r]];
        }
        if (!solve_square(std::move(a), std::move(b), x)) continue;

        const double tol = 1e-7;
        bool feasible = true;
        for (const auto& c : p.constraints) {
            double lhs = 0.0;
            for (int j = 0; j < n; ++j) lhs += c.coeffs[j] * x[j];
            if (c.rel == Relation::LessEq && lhs > c.rhs + tol) feasible = false;
            if (c.rel == Relation::GreaterEq && lhs < c.rhs - tol) feasible = false;
            if (c.rel == Relation::Equal && std::abs(lhs - c.rhs) > tol) feasible = false;
            if (!feasible) break;
        }
        for (int j = 0; feasible && j < n; ++j) {
            if (x[j] < p.lower[j] - tol || x[j] > p.upper[j] + tol) feasible = false;
        }
        if (!feasible) continue;

        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += p.objective[j] * x[j];
        if (!best || obj < *best) best = obj;
    } while (advance());
    return best;
}

double perron_root_bisection(const CompletePcm& m) {
    const int n = m.order();
    double upper = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j);
        upper = std::max(upper, s);
    }
    upper += 1.0;
    double lower = n - 1e-6;
    double flo = det_shifted(m, lower);
    double fhi = det_shifted(m, upper);
    if (flo == 0.0) return lower;
    if (flo * fhi > 0.0) {
        // Walk the bracket up past any lower real roots.
        double step = (upper - lower) / 4096.0;
        double t = lower;
        while (t < upper && det_shifted(m, t) * fhi > 0.0) t += step;
        lower = t - step;
        flo = det_shifted(m, lower);
        if (flo * fhi > 0.0) throw std::runtime_error("no bracket for the Perron root");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lower + upper);
        double fm = det_shifted(m, mid);
        if (fm == 0.0) return mid;
        if (fm * flo <= 0.0) {
            upper = mid;
        } else {
            lower = mid;
            flo = fm;
        }
    }
    return 0.5 * (lower + upper);
}

double perron_root_3x3(const CompletePcm& m) {
    if (m.order() != 3) throw std::invalid_argument("order must be 3");
    double d = m(0, 1) * m(1, 2) * m(2, 0);
    return 1.0 + std::cbrt(d) + 1.0 / std::cbrt(d);
}

ThetaVector grid_search_best_theta(const IncompletePcm& matrix,
                                   const std::vector<double>& candidate_fills, double radius,
                                   double resolution, int refinements) {
    const int m = static_cast<int>(candidate_fills.size());
    std::vector<double> center(m);
    for (int k = 0; k < m; ++k) center[k] = std::log(candidate_fills[k]);

    auto theta_at = [&](const std::vector<double>& logs) {
        std::vector<double> fills(m);
        for (int k = 0; k < m; ++k) fills[k] = std::exp(logs[k]);
        return lexpcm::theta_vector(matrix.completed_with(fills));
    };

    std::vector<double> best_logs = center;
    ThetaVector best = theta_at(center);
    for (int pass = 0; pass <= refinements; ++pass) {
        int steps = static_cast<int>(std::round(radius / resolution));
        std::vector<int> offs(m, -steps);
        for (;;) {
            std::vector<double> logs(m);
            for (int k = 0; k < m; ++k) logs[k] = center[k] + offs[k] * resolution;
            ThetaVector t = theta_at(logs);
            if (lexpcm::lex_compare(t, best) == lexpcm::LexOrder::Less) {
                best = t;
                best_logs = logs;
            }
            int k = m - 1;
            while (k >= 0 && offs[k] == steps) offs[k--] = -steps;
            if (k < 0) break;
            ++offs[k];
        }
        center = best_logs;
        radius = 2.0 * resolution;
        resolution /= 10.0;
    }
    return best;
}

double envelope_minimizer(const std::vector<double>& log_products) {
    double lo = *std::min_element(log_products.begin(), log_products.end());
    double hi = *std::max_element(log_products.begin(), log_products.end());
    auto height = [&](double t) {
        double h = 0.0;
        for (double c : log_products) h = std::max(h, std::abs(c - t));
        return h;
    };
    double best_t = lo, best_h = height(lo);
    double a = lo - 1.0, b = hi + 1.0;
    for (int pass = 0; pass < 4; ++pass) {
        double step = (b - a) / 20000.0;
        for (double t = a; t <= b; t += step) {
            double h = height(t);
            if (h < best_h) {
                best_h = h;
                best_t = t;
            }
        }
        a = best_t - step;
        b = best_t + step;
    }
    return std::exp(best_t);
}

CompletePcm random_pcm(int n, SplitMix64& rng, double spread) {
    std::vector<double> w(n);
    for (double& v : w) v = std::exp(3.0 * rng.next_double() - 1.5);
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 1.0);
    double ls = std::log(spread);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double noise = std::exp((2.0 * rng.next_double() - 1.0) * ls);
            double v = w[i] / w[j] * noise;
            entries[static_cast<std::size_t>(i) * n + j] = v;
            entries[static_cast<std::size_t>(j) * n + i] = 1.0 / v;
        }
    }
    return CompletePcm::from_entries(n, std::move(entries));
}

LpProblem random_feasible_bounded_lp(SplitMix64& rng, int max_vars, int max_rows) {
    int n = 2 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(max_vars - 1)));
    int rows = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(max_rows)));
    std::vector<double> c(n);
    for (double& v : c) v = 2.0 * rng.next_double() - 1.0;
    LpProblem p = LpProblem::minimize(std::move(c));
    std::vector<double> x0(n);
    for (double& v : x0) v = 5.0 * rng.next_double();
    for (int r = 0; r < rows; ++r) {
        std::vector<double> a(n);
        for (double& v : a) v = 2.0 * rng.next_double() - 1.0;
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += a[j] * x0[j];
        std::uint32_t kind = rng.next_below(3);
        if (kind == 0) {
            p.add_constraint("r" + std::to_string(r), std::move(a), Relation::LessEq,
                             lhs + 2.0 * rng.next_double());
        } else if (kind == 1) {
            p.add_constraint("r" + std::to_string(r), std::move(a), Relation::GreaterEq,
                             lhs - 2.0 * rng.next_double());
        } else {
            p.add_constraint("r" + std::to_string(r), std::move(a), Relation::Equal, lhs);
        }
    }
    std::vector<double> ones(n, 1.0);
    double total = 0.0;
    for (double v : x0) total += v;
    p.add_constraint("box", std::move(ones), Relation::LessEq, total + 10.0);
    return p;
}

IncompletePcm random_incomplete(int n, int m, bool connected, SplitMix64& rng, double spread) {
    for (int attempt = 0; attempt < 20000; ++attempt) {
        CompletePcm full = random_pcm(n, rng, spread);
        std::vector<std::pair<int, int>> pos;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pos.emplace_back(i, j);
        for (int k = 0; k < m; ++k) {
            std::uint32_t pick = k + rng.next_below(static_cast<std::uint32_t>(pos.size() - k));
            std::swap(pos[k], pos[pick]);
        }
        std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = full(i, j);
        for (int k = 0; k < m; ++k) {
            auto [i, j] = pos[k];
            cells[static_cast<std::size_t>(i) * n + j].reset();
            cells[static_cast<std::size_t>(j) * n + i].reset();
        }
        IncompletePcm inc = IncompletePcm::from_cells(n, std::move(cells));
        if (lexpcm::is_connected(lexpcm::graph_of(inc)) == connected) return inc;
    }
    throw std::runtime_error("could not draw a matching incomplete instance");
}

IncompletePcm random_disconnected(int n, int extra_missing, SplitMix64& rng, double spread) {
    CompletePcm full = random_pcm(n, rng, spread);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng.next_below(static_cast<std::uint32_t>(i + 1))]);
    }
    int p = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - 1)));
    std::vector<bool> in_block(n, false);
    for (int i = 0; i < p; ++i) in_block[order[i]] = true;

    std::vector<std::optional<double>> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cells[static_cast<std::size_t>(i) * n + j] = full(i, j);
    auto knock_out = [&](int i, int j) {
        cells[static_cast<std::size_t>(i) * n + j].reset();
        cells[static_cast<std::size_t>(j) * n + i].reset();
    };
    std::vector<std::pair<int, int>> inside;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (in_block[i] != in_block[j]) {
                knock_out(i, j);
            } else {
                inside.emplace_back(i, j);
            }
        }
    }
    for (int k = 0; k < extra_missing && !inside.empty(); ++k) {
        std::uint32_t pick = rng.next_below(static_cast<std::uint32_t>(inside.size()));
        knock_out(inside[pick].first, inside[pick].second);
        inside.erase(inside.begin() + pick);
    }
    return IncompletePcm::from_cells(n, std::move(cells));
}

}  // namespace oracles
