#include "sprayflame/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sprayflame {

namespace {

struct Crossing {
    int low_row;
    double eta;
};

// Largest-eta sign change along a column; linear interpolation between the
// bracketing rows. Returns count of crossings found.
int column_crossings(const FieldGrid& grid, std::span<const double> values, int col,
                     Crossing& out) {
    const int nx = grid.n_xi();
    const int ny = grid.n_eta();
    int count = 0;
    for (int r = 0; r + 1 < ny; ++r) {
        const double a = values[static_cast<size_t>(r) * nx + col];
        const double b = values[static_cast<size_t>(r + 1) * nx + col];
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
            const double t = a / (a - b);
            out.low_row = r;
            out.eta = grid.eta[r] + t * (grid.eta[r + 1] - grid.eta[r]);
            ++count;
        } else if (a == 0.0 && b != 0.0) {
            out.low_row = r;
            out.eta = grid.eta[r];
            ++count;
        }
    }
    return count;
}

// Sign change of the eta=0 row marks the flame base.
bool base_anchor(const FieldGrid& grid, std::span<const double> values, double& xi0) {
    for (int j = 0; j + 1 < grid.n_xi(); ++j) {
        const double a = values[j];
        const double b = values[j + 1];
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
            const double t = a / (a - b);
            xi0 = grid.xi[j] + t * (grid.xi[j + 1] - grid.xi[j]);
            return true;
        }
    }
    return false;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo, double tol) {
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= tol)
            return mid;
        if ((flo > 0.0) == (fm > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

} // namespace

std::optional<FlameFront> flame_front(const FieldGrid& grid,
                                      std::span<const double> values) {
    return flame_front(grid, values, nullptr, 0.0);
}

std::optional<FlameFront> flame_front(const FieldGrid& grid,
                                      std::span<const double> values,
                                      const std::function<double(double, double)>& f,
                                      double tol) {
    FlameFront front;
    const int nx = grid.n_xi();
    for (int j = 0; j < nx; ++j) {
        Crossing c{};
        const int count = column_crossings(grid, values, j, c);
        if (count == 0)
            continue;
        if (count > 1)
            ++front.multi_crossing_columns;
        double eta_f = c.eta;
        if (f) {
            const double xi = grid.xi[j];
            const double lo = grid.eta[c.low_row], hi = grid.eta[c.low_row + 1];
            const double flo = values[static_cast<size_t>(c.low_row) * nx + j];
            if (std::abs(f(xi, eta_f)) > tol)
                eta_f = bisect([&](double e) { return f(xi, e); }, lo, hi, flo, tol);
        }
        front.points.push_back({grid.xi[j], eta_f});
    }
    double xi0 = 0.0;
    if (base_anchor(grid, values, xi0)) {
        if (f && std::abs(f(xi0, 0.0)) > tol) {
            // re-bracket along xi on the boundary row
            for (int j = 0; j + 1 < nx; ++j) {
                const double a = values[j], b = values[j + 1];
                if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) {
                    xi0 = bisect([&](double x) { return f(x, 0.0); }, grid.xi[j],
                                 grid.xi[j + 1], a, tol);
                    break;
                }
            }
        }
        front.points.push_back({xi0, 0.0});
        std::sort(front.points.begin(), front.points.end(),
                  [](const FrontPoint& a, const FrontPoint& b) { return a.xi < b.xi; });
    }
    if (front.points.empty())
        return std::nullopt;
    return front;
}

namespace {

// One-dimensional golden-section maximization on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

std::optional<FlameMetrics> flame_metrics(const FlameModel& model,
                                          const FieldEvaluator& evaluator,
                                          const MetricsOptions& opts) {
    const FieldGrid& grid = evaluator.grid();
    const int nx = grid.n_xi();
    const int ny = grid.n_eta();

    std::vector<double> gamma_vals;
    evaluator.evaluate(model.gas_field(), gamma_vals, opts.exec);

    auto front = flame_front(
        grid, gamma_vals,
        [&](double xi, double eta) { return model.gamma(xi, eta); },
        opts.front_tolerance);
    if (!front)
        return std::nullopt;

    FlameMetrics metrics;
    metrics.front = std::move(front->points);
    metrics.eta_max = 0.0;
    for (const FrontPoint& p : metrics.front)
        metrics.eta_max = std::max(metrics.eta_max, p.eta);

    if (!opts.with_temperature) {
        metrics.t_max = std::numeric_limits<double>::quiet_NaN();
        return metrics;
    }

    std::vector<double> gamma_t_vals;
    evaluator.evaluate(model.temperature_field(), gamma_t_vals, opts.exec);

    double t_best = -std::numeric_limits<double>::infinity();
    int best_row = 0, best_col = 0;
    for (int r = 0; r < ny; ++r) {
        const size_t off = static_cast<size_t>(r) * nx;
        for (int j = 0; j < nx; ++j) {
            const double t = gamma_t_vals[off + j] - std::max(gamma_vals[off + j], 0.0);
            if (t > t_best) {
                t_best = t;
                best_row = r;
                best_col = j;
            }
        }
    }
    // local refinement along eta removes the grid bias at the flame tip
    const double xi_star = grid.xi[best_col];
    const double lo = grid.eta[std::max(0, best_row - 1)];
    const double hi = grid.eta[std::min(ny - 1, best_row + 1)];
    const double refined =
        golden_max([&](double e) { return model.temperature(xi_star, e); }, lo, hi);
    metrics.t_max = std::max(t_best, refined);
    return metrics;
}

} // namespace sprayflame
