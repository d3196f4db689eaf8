#ifndef SPRAYFLAME_FRONT_HPP
#define SPRAYFLAME_FRONT_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sprayflame/field.hpp"
#include "sprayflame/model.hpp"

namespace sprayflame {

struct FrontPoint {
    double xi;
    double eta;
};

struct FlameFront {
    std::vector<FrontPoint> points;   ///< ordered by xi
    int multi_crossing_columns = 0;   ///< columns where the largest of several crossings was taken
};

/// Flame summary: maximum front height, maximum field temperature and the
/// extracted front curve.
struct FlameMetrics {
    double eta_max = 0.0;
    double t_max = 0.0;
    std::vector<FrontPoint> front;
};

/// Zero level set of the sampled gamma field, one point per xi column with
/// a sign change (largest eta crossing, linear interpolation between the
/// bracketing rows). A sign change along the eta=0 row contributes the
/// flame-base anchor point. Returns nullopt when gamma does not change
/// sign anywhere on the grid ("no flame", distinct from an error).
///
/// `values` is row-major [eta][xi] as produced by FieldEvaluator.
std::optional<FlameFront> flame_front(const FieldGrid& grid,
                                      std::span<const double> values);

/// As above, but each crossing is tightened by bisection on `f` until
/// |f| <= tol (the sampled bracket already pins the root to one cell).
std::optional<FlameFront> flame_front(const FieldGrid& grid,
                                      std::span<const double> values,
                                      const std::function<double(double, double)>& f,
                                      double tol);

struct MetricsOptions {
    double front_tolerance = 1e-3;
    bool with_temperature = true;   ///< skip the gamma_T pass for height-only fitness
    Execution exec = Execution::parallel;
};

/// Evaluates the model on the evaluator's grid and extracts FlameMetrics.
/// t_max is the grid maximum refined by a golden-section pass along eta at
/// the argmax column. Returns nullopt when there is no flame.
std::optional<FlameMetrics> flame_metrics(const FlameModel& model,
                                          const FieldEvaluator& evaluator,
                                          const MetricsOptions& opts = {});

} // namespace sprayflame

#endif
