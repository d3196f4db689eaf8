#include "sprayflame/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sprayflame {

FieldGrid FieldGrid::uniform(int n_xi, int n_eta, double eta_top) {
    if (n_xi < 2 || n_eta < 2)
        throw std::invalid_argument("grid needs at least 2 points per axis");
    if (!(eta_top > 0.0))
        throw std::invalid_argument("eta_top must be positive");
    FieldGrid g;
    g.xi.resize(n_xi);
    g.eta.resize(n_eta);
    for (int i = 0; i < n_xi; ++i)
        g.xi[i] = static_cast<double>(i) / (n_xi - 1);
    for (int r = 0; r < n_eta; ++r)
        g.eta[r] = eta_top * static_cast<double>(r) / (n_eta - 1);
    return g;
}

void validate(const FieldGrid& grid) {
    if (grid.n_xi() < 2 || grid.n_eta() < 2)
        throw std::invalid_argument("grid needs at least 2 points per axis");
    for (int i = 1; i < grid.n_xi(); ++i)
        if (!(grid.xi[i] > grid.xi[i - 1]))
            throw std::invalid_argument("xi points must be strictly increasing");
    if (grid.eta[0] != 0.0)
        throw std::invalid_argument("eta points must start at 0");
    for (int r = 1; r < grid.n_eta(); ++r)
        if (!(grid.eta[r] > grid.eta[r - 1]))
            throw std::invalid_argument("eta points must be strictly increasing");
}

FieldEvaluator::FieldEvaluator(FieldGrid grid, int n_modes)
    : grid_(std::move(grid)), n_modes_(n_modes) {
    validate(grid_);
    if (n_modes_ < 1)
        throw std::invalid_argument("n_modes must be >= 1");
    const int nx = grid_.n_xi();
    cos_table_.resize(static_cast<size_t>(n_modes_) * nx);
    for (int n = 1; n <= n_modes_; ++n) {
        double* row = cos_table_.data() + static_cast<size_t>(n - 1) * nx;
        for (int j = 0; j < nx; ++j)
            row[j] = std::cos(n * std::numbers::pi * grid_.xi[j]);
    }
}

void FieldEvaluator::eval_row(const CosineSeriesField& field, int row,
                              std::vector<double>& amplitudes, double* out) const {
    const int nx = grid_.n_xi();
    const int modes = field.n_modes();
    const double constant = field.cosine_amplitudes(grid_.eta[row], amplitudes);
    for (int j = 0; j < nx; ++j)
        out[j] = constant;
    for (int n = 0; n < modes; ++n) {
        const double a = amplitudes[n];
        const double* crow = cos_table_.data() + static_cast<size_t>(n) * nx;
        for (int j = 0; j < nx; ++j)
            out[j] += a * crow[j];
    }
}

void FieldEvaluator::evaluate(const CosineSeriesField& field, std::vector<double>& out,
                              Execution exec) const {
    if (field.n_modes() > n_modes_)
        throw std::invalid_argument("field has more modes than the evaluator table");
    const int nx = grid_.n_xi();
    const int ny = grid_.n_eta();
    out.resize(static_cast<size_t>(nx) * ny);

    if (exec == Execution::parallel) {
#pragma omp parallel
        {
            std::vector<double> amplitudes(field.n_modes());
#pragma omp for schedule(static)
            for (int r = 0; r < ny; ++r)
                eval_row(field, r, amplitudes, out.data() + static_cast<size_t>(r) * nx);
        }
    } else {
        std::vector<double> amplitudes(field.n_modes());
        for (int r = 0; r < ny; ++r)
            eval_row(field, r, amplitudes, out.data() + static_cast<size_t>(r) * nx);
    }
}

} // namespace sprayflame
