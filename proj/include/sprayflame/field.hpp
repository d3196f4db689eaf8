#ifndef SPRAYFLAME_FIELD_HPP
#define SPRAYFLAME_FIELD_HPP

#include <vector>

#include "sprayflame/series.hpp"

namespace sprayflame {

enum class Execution { serial, parallel };

struct FieldGrid {
    std::vector<double> xi;
    std::vector<double> eta;

    static FieldGrid uniform(int n_xi, int n_eta, double eta_top);
    int n_xi() const { return static_cast<int>(xi.size()); }
    int n_eta() const { return static_cast<int>(eta.size()); }
};
void validate(const FieldGrid& grid);

/// Row-at-a-time grid evaluation of a CosineSeriesField. The cos(n pi xi)
/// table is precomputed once per (grid, n_modes) pair so repeated
/// evaluations (GA fitness, sweeps) only pay the per-row exponentials and
/// an inner product per point.
///
/// The parallel path distributes eta-rows across OpenMP threads. Every
/// point is an independent pure function of (xi, eta), so the parallel
/// kernel produces bit-identical output to the serial reference.
class FieldEvaluator {
public:
    FieldEvaluator(FieldGrid grid, int n_modes);

    /// out is resized to n_eta*n_xi, laid out row-major as out[row*n_xi + col]
    /// with `row` indexing eta and `col` indexing xi.
    void evaluate(const CosineSeriesField& field, std::vector<double>& out,
                  Execution exec = Execution::parallel) const;

    const FieldGrid& grid() const { return grid_; }
    int n_modes() const { return n_modes_; }

private:
    void eval_row(const CosineSeriesField& field, int row,
                  std::vector<double>& amplitudes, double* out) const;

    FieldGrid grid_;
    int n_modes_;
    std::vector<double> cos_table_;  ///< flat [mode][xi]
};

} // namespace sprayflame

#endif
