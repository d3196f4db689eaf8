#ifndef SPRAYFLAME_GA_HPP
#define SPRAYFLAME_GA_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "sprayflame/field.hpp"

namespace sprayflame {

/// Mixed-integer candidate: k distinct section indices in [1, n_sections]
/// paired with non-negative liquid fractions. Kept sorted by section after
/// repair so equal candidates share one encoding.
struct Chromosome {
    std::vector<int> sections;
    std::vector<double> fractions;

    int k() const { return static_cast<int>(sections.size()); }
};

struct GAConfig {
    int population_size = 100;
    int max_generations = 200;
    double termination_cost_delta = 1e-9;  ///< stop when the 20-generation best improvement drops below this
    double mutation_rate = 0.05;
    int elite_parents = 2;
    std::uint64_t rng_seed = 42;
    double delta_cap = 0.7;
    double e_bar_const = 100.0;
};
void validate(const GAConfig& cfg);

/// Generations examined by the stagnation termination rule.
inline constexpr int kTerminationWindow = 20;

/// g(x) = dot(weights, x) + offset, interpreted as g(x) <= 0.
struct LinearFunctional {
    std::vector<double> weights;
    double offset = 0.0;

    double operator()(std::span<const double> x) const;
};

/// Linear constraints over the fraction vector. Equalities are stored as
/// the canonical pair of inequalities h - band <= 0 and -h - band <= 0;
/// repair projects onto the equality hyperplane so the band holds exactly.
class ConstraintSet {
public:
    void add_inequality(LinearFunctional g);
    void add_equality(LinearFunctional h, double band = 1e-6);

    const std::vector<LinearFunctional>& inequalities() const { return inequalities_; }
    const std::vector<std::pair<LinearFunctional, double>>& equalities() const { return equalities_; }

    /// Total positive violation of all inequalities.
    double violation(std::span<const double> x) const;
    bool feasible(std::span<const double> x, double tol = 0.0) const;

    /// Cyclic projection: equalities onto their hyperplanes, violated
    /// inequalities onto their half-spaces.
    void repair(std::span<double> x, int passes = 4) const;

private:
    std::vector<LinearFunctional> inequalities_;
    std::vector<std::pair<LinearFunctional, double>> equalities_;
};

using FitnessFn = std::function<double(const Chromosome&)>;

struct GenerationStats {
    double best;
    double mean;
    double worst;
};

struct GAResult {
    Chromosome best;
    double best_score = 0.0;
    std::vector<GenerationStats> history;
    long long evaluations = 0;
    long long cache_hits = 0;
    long long failed_evaluations = 0;  ///< fitness at or below the no-flame surrogate
    int generations = 0;
};

/// Fitness score used for candidates whose model run produced no flame.
inline constexpr double kNoFlameScore = -1e9;

// --- operators -------------------------------------------------------------

/// Duplicate sections move to the lowest unused index; fractions are
/// clipped at zero and rescaled when their sum exceeds the cap. Genes end
/// up sorted by section. Idempotent on feasible input.
void repair(Chromosome& chromosome, double delta_cap, int n_sections);

/// Sections drawn without replacement, fractions uniform on the simplex
/// scaled to delta_cap.
Chromosome random_chromosome(int k_dof, int n_sections, double delta_cap,
                             std::mt19937_64& rng);

std::vector<Chromosome> init_population(const GAConfig& cfg, int k_dof,
                                        int n_sections, std::mt19937_64& rng);

/// Indices of the top `elite_parents` scores, ties broken by lower index.
std::vector<int> select_parents(std::span<const double> scores, int elite_parents);

/// Single random cut over the interleaved gene string
/// [d1, f1, d2, f2, ...]; children swap tails. No repair here.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a,
                                            const Chromosome& parent_b,
                                            std::mt19937_64& rng);

/// Each fraction gene takes a Gaussian step (sigma = 0.05 * delta_cap,
/// clipped at zero) with probability `rate`; each section gene is
/// resampled to an unused section with probability `rate`. Ends with
/// repair.
void mutate(Chromosome& chromosome, double rate, double delta_cap, int n_sections,
            std::mt19937_64& rng);

/// 4 bits per section gene (offset encoding, value 0 -> section 1) and
/// 16 bits per fraction gene quantized over [0, delta_cap], interleaved
/// per gene pair. Bits are stored one per byte (0/1).
std::vector<std::uint8_t> encode(const Chromosome& chromosome, double delta_cap);
Chromosome decode(std::span<const std::uint8_t> bits, double delta_cap);

/// Full optimization loop: breed the whole next generation from the top
/// elite parents (retained unchanged), evaluate fitness (optionally in
/// parallel; scores are written by index so results do not depend on the
/// thread schedule), track the all-time best, stop on max_generations or
/// when the best score improves by less than termination_cost_delta over
/// the trailing window.
GAResult run_ga(const GAConfig& cfg, int k_dof, int n_sections, const FitnessFn& fitness,
                const ConstraintSet* constraints = nullptr,
                Execution exec = Execution::parallel);

} // namespace sprayflame

#endif
