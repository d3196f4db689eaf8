#ifndef SPRAYFLAME_FITNESS_HPP
#define SPRAYFLAME_FITNESS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "sprayflame/front.hpp"
#include "sprayflame/ga.hpp"
#include "sprayflame/model.hpp"

namespace sprayflame {

enum class FitnessKind { eta_max, t_max };

/// Everything the combustion objective needs, fixed for a whole GA run /
/// sweep: the model context minus the candidate distribution, plus a
/// shared cosine table. metrics_for() is a pure function of delta, safe
/// for concurrent calls.
class CombustionEvaluator {
public:
    CombustionEvaluator(ModelParams base, FieldGrid grid, double front_tolerance = 1e-3);

    /// Metrics for a full per-section distribution; nullopt when no flame.
    std::optional<FlameMetrics> metrics_for(const std::vector<double>& delta,
                                            bool with_temperature = true,
                                            Execution exec = Execution::serial) const;

    /// Metrics with overrides for sweep axes.
    std::optional<FlameMetrics> metrics_at(const std::vector<double>& delta,
                                           double e_bar, double peclet,
                                           bool with_temperature = true,
                                           Execution exec = Execution::serial) const;

    /// GA objective: expands the chromosome onto the sectional grid and
    /// returns eta_max or t_max (kNoFlameScore when no flame).
    FitnessFn fitness(FitnessKind kind) const;

    std::vector<double> expand(const Chromosome& chromosome) const;

    const ModelParams& base() const { return base_; }
    const FieldEvaluator& evaluator() const { return *evaluator_; }

private:
    ModelParams base_;
    std::shared_ptr<const FieldEvaluator> evaluator_;
    double front_tolerance_;
};

/// Separable toy objective with a unique maximum of 2 at (10, 10, -1) on
/// [0,20] x [0,20] x [-1,1].
double sinc_peak_objective(double x, double y, double z);

/// Maps a 3-gene chromosome onto the sinc toy domain: the fractions of
/// sections 1..3 (cap 1) give x = 20 f1, y = 20 f2, z = 2 f3 - 1.
double sinc_toy_fitness(const Chromosome& chromosome);

/// Bit-count of the encoded chromosome; the classic first-example GA score.
double l1_bits_fitness(const Chromosome& chromosome, double delta_cap);

} // namespace sprayflame

#endif
