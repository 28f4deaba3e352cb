#include "lexpcm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lexpcm {

namespace {

struct PowerResult {
    double lambda;
    std::vector<double> vec;  // normalized to sum 1
};

PowerResult power_iteration(const std::vector<double>& entries, int n,
                            const std::vector<double>* warm_start) {
    std::vector<double> v(n, 1.0 / n);
    if (warm_start && static_cast<int>(warm_start->size()) == n) v = *warm_start;
    std::vector<double> w(n);
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = entries.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) s += row[j] * v[j];
            w[i] = s;
        }
        double total = 0.0;
        for (double x : w) total += x;
        double new_lambda = total;  // since sum(v) == 1
        double max_dv = 0.0;
        for (int i = 0; i < n; ++i) {
            double nv = w[i] / total;
            max_dv = std::max(max_dv, std::abs(nv - v[i]) / std::max(nv, 1e-300));
            v[i] = nv;
        }
        bool lambda_ok = it > 0 && std::abs(new_lambda - lambda) <= 1e-12 * new_lambda;
        lambda = new_lambda;
        if (lambda_ok && max_dv <= 1e-12) return {lambda, std::move(v)};
    }
    throw std::runtime_error("power iteration failed to converge");
}

std::vector<double> percent_normalized(std::vector<double> w) {
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x = 100.0 * x / total;
    return w;
}

// Gaussian elimination with partial pivoting; fine at this scale.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r) * n + col]) >
                std::abs(a[static_cast<std::size_t>(piv) * n + col])) {
                piv = r;
            }
        }
        if (std::abs(a[static_cast<std::size_t>(piv) * n + col]) < 1e-14) {
            throw std::runtime_error("singular linear system");
        }
        if (piv != col) {
            for (int j = col; j < n; ++j) {
                std::swap(a[static_cast<std::size_t>(piv) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            }
            std::swap(b[piv], b[col]);
        }
        double inv = 1.0 / a[static_cast<std::size_t>(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[static_cast<std::size_t>(r) * n + col] * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) {
                a[static_cast<std::size_t>(r) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < n; ++j) s -= a[static_cast<std::size_t>(r) * n + j] * x[j];
        x[r] = s / a[static_cast<std::size_t>(r) * n + r];
    }
    return x;
}

}  // namespace

double lambda_max(const CompletePcm& matrix) {
    return power_iteration(matrix.entries(), matrix.order(), nullptr).lambda;
}

WeightVector em_weights(const CompletePcm& matrix) {
    auto res = power_iteration(matrix.entries(), matrix.order(), nullptr);
    return {percent_normalized(std::move(res.vec))};
}

WeightVector gm_weights(const CompletePcm& matrix) {
    const int n = matrix.order();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::log(matrix(i, j));
        w[i] = std::exp(s / n);
    }
    return {percent_normalized(std::move(w))};
}

CompletionResult cr_optimal_complete(const IncompletePcm& matrix) {
    if (!is_connected(graph_of(matrix))) {
        throw NonUniqueError("eigenvalue-optimal completion needs a connected comparison graph");
    }
    const int n = matrix.order();
    const auto& missing = matrix.missing_positions();
    const int m = matrix.missing_count();

    if (m == 0) {
        CompletePcm done = matrix.to_complete();
        auto theta = n >= 3 ? theta_vector(done) : ThetaVector::from_values({});
        return CompletionResult{done, theta, {}, CompletionMethod::EigOptimal, false};
    }

    const double lo_log = std::log(1.0 / 9999.0);
    const double hi_log = std::log(9999.0);
    std::vector<double> x(m, 0.0);  // log fills

    std::vector<double> entries(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (matrix.known(i, j)) entries[static_cast<std::size_t>(i) * n + j] = matrix.value(i, j);

    std::vector<double> eigvec;  // warm start across evaluations
    auto eval = [&](const std::vector<double>& logs) {
        for (int k = 0; k < m; ++k) {
            auto [i, j] = missing[k];
            double v = std::exp(logs[k]);
            entries[static_cast<std::size_t>(i) * n + j] = v;
            entries[static_cast<std::size_t>(j) * n + i] = 1.0 / v;
        }
        auto res = power_iteration(entries, n, eigvec.empty() ? nullptr : &eigvec);
        eigvec = std::move(res.vec);
        return res.lambda;
    };

    const double gold = (std::sqrt(5.0) - 1.0) / 2.0;
    double current = eval(x);
    for (int sweep = 0; sweep < 500; ++sweep) {
        double before = current;
        double max_move = 0.0;
        for (int k = 0; k < m; ++k) {
            // Full bracket on the first sweep; afterwards a window around the
            // current point, since the coordinate moves shrink geometrically.
            double a = lo_log, b = hi_log;
            if (sweep > 0) {
                a = std::max(lo_log, x[k] - 0.75);
                b = std::min(hi_log, x[k] + 0.75);
            }
            std::vector<double> probe = x;
            double c = b - gold * (b - a), d = a + gold * (b - a);
            probe[k] = c;
            double fc = eval(probe);
            probe[k] = d;
            double fd = eval(probe);
            while (b - a > 1e-13) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gold * (b - a);
                    probe[k] = c;
                    fc = eval(probe);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gold * (b - a);
                    probe[k] = d;
                    fd = eval(probe);
                }
            }
            double next = 0.5 * (a + b);
            max_move = std::max(max_move, std::abs(next - x[k]));
            x[k] = next;
        }
        current = eval(x);
        // The eigenvalue is flat to second order near the optimum, so the
        // improvement test alone would stop with coordinates ~1e-6 off.
        if (before - current < 1e-12 && max_move < 1e-10) break;
    }

    std::vector<double> fills(m);
    for (int k = 0; k < m; ++k) fills[k] = std::exp(x[k]);
    CompletePcm done = matrix.completed_with(fills);
    auto theta = n >= 3 ? theta_vector(done) : ThetaVector::from_values({});
    return CompletionResult{done, theta, {}, CompletionMethod::EigOptimal, false};
}

CompletionResult lls_optimal_complete(const IncompletePcm& matrix) {
    if (!is_connected(graph_of(matrix))) {
        throw NonUniqueError(
            "logarithmic least squares completion needs a connected comparison graph");
    }
    const int n = matrix.order();

    // Normal equations of min sum over known pairs of
    // (log a_ij - v_i + v_j)^2 with v_n pinned to 0: the reduced Laplacian of
    // the comparison graph, nonsingular for connected graphs.
    std::vector<double> lap(static_cast<std::size_t>(n - 1) * (n - 1), 0.0);
    std::vector<double> rhs(n - 1, 0.0);
    for (int i = 0; i < n - 1; ++i) {
        int degree = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i || !matrix.known(i, j)) continue;
            ++degree;
            if (j < n - 1) lap[static_cast<std::size_t>(i) * (n - 1) + j] -= 1.0;
            rhs[i] += std::log(matrix.value(i, j));
        }
        lap[static_cast<std::size_t>(i) * (n - 1) + i] = degree;
    }
    std::vector<double> v = solve_dense(std::move(lap), std::move(rhs));
    v.push_back(0.0);

    std::vector<double> fills;
    for (auto [i, j] : matrix.missing_positions()) fills.push_back(std::exp(v[i] - v[j]));
    CompletePcm done = matrix.completed_with(fills);
    auto theta = n >= 3 ? theta_vector(done) : ThetaVector::from_values({});
    return CompletionResult{done, theta, {}, CompletionMethod::Lls, false};
}

}  // namespace lexpcm
