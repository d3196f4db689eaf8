#include "sprayflame/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace sprayflame {

CombustionEvaluator::CombustionEvaluator(ModelParams base, FieldGrid grid,
                                         double front_tolerance)
    : base_(std::move(base)),
      evaluator_(std::make_shared<FieldEvaluator>(std::move(grid), base_.n_modes)),
      front_tolerance_(front_tolerance) {
    if (base_.delta.empty())
        base_.delta.assign(base_.n_sections, 0.0);
    validate(base_);
}

std::optional<FlameMetrics> CombustionEvaluator::metrics_for(
    const std::vector<double>& delta, bool with_temperature, Execution exec) const {
    return metrics_at(delta, base_.e_bar, base_.transport.peclet, with_temperature, exec);
}

std::optional<FlameMetrics> CombustionEvaluator::metrics_at(
    const std::vector<double>& delta, double e_bar, double peclet,
    bool with_temperature, Execution exec) const {
    ModelParams p = base_;
    p.delta = delta;
    p.e_bar = e_bar;
    p.transport.peclet = peclet;
    const FlameModel model = FlameModel::assemble(p);
    MetricsOptions opts;
    opts.front_tolerance = front_tolerance_;
    opts.with_temperature = with_temperature;
    opts.exec = exec;
    return flame_metrics(model, *evaluator_, opts);
}

std::vector<double> CombustionEvaluator::expand(const Chromosome& chromosome) const {
    std::vector<double> delta(base_.n_sections, 0.0);
    for (int g = 0; g < chromosome.k(); ++g) {
        const int d = chromosome.sections[g];
        if (d < 1 || d > base_.n_sections)
            throw std::invalid_argument("section index out of range");
        delta[d - 1] += chromosome.fractions[g];
    }
    return delta;
}

FitnessFn CombustionEvaluator::fitness(FitnessKind kind) const {
    return [this, kind](const Chromosome& chromosome) -> double {
        const auto metrics =
            metrics_for(expand(chromosome), kind == FitnessKind::t_max, Execution::serial);
        if (!metrics)
            return kNoFlameScore;
        return kind == FitnessKind::eta_max ? metrics->eta_max : metrics->t_max;
    };
}

namespace {
double sinc(double t) {
    return t == 0.0 ? 1.0 : std::sin(t) / t;
}
} // namespace

double sinc_peak_objective(double x, double y, double z) {
    return sinc(x - 10.0) * sinc(y - 10.0) * (-z * z * z + 1.0);
}

double sinc_toy_fitness(const Chromosome& chromosome) {
    if (chromosome.k() != 3)
        throw std::invalid_argument("sinc toy expects 3 genes");
    const double x = 20.0 * chromosome.fractions[0];
    const double y = 20.0 * chromosome.fractions[1];
    const double z = 2.0 * chromosome.fractions[2] - 1.0;
    return sinc_peak_objective(x, y, z);
}

double l1_bits_fitness(const Chromosome& chromosome, double delta_cap) {
    const auto bits = encode(chromosome, delta_cap);
    double ones = 0.0;
    for (auto b : bits)
        ones += b;
    return ones;
}

} // namespace sprayflame
