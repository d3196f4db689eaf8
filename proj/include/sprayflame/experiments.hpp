#ifndef SPRAYFLAME_EXPERIMENTS_HPP
#define SPRAYFLAME_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sprayflame/fitness.hpp"

namespace sprayflame {

struct SweepSpec {
    std::vector<double> e_bar_grid;   ///< strictly increasing, usually log-spaced
    std::vector<int> d_list = {1, 3, 5, 7, 9};
    std::vector<double> delta_list = {0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<double> pe_list = {3.0, 10.0, 100.0, 1000.0};
    std::vector<int> dof_list = {1, 2, 3, 4, 5, 6};
    std::uint64_t rng_seed = 7;

    static std::vector<double> log_grid(double lo, double hi, int n);
};
void validate(const SweepSpec& spec);

struct SweepRow {
    std::string curve;          ///< curve id, stable across runs
    std::vector<double> delta;  ///< full per-section distribution
    double e_bar = 0.0;
    double peclet = 0.0;
    double eta_max = 0.0;
    double t_max = 0.0;
    bool ok = false;            ///< false flags a no-flame point
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double gaseous_eta = 0.0;                  ///< delta = 0 baseline at default Pe
    double gaseous_t = 0.0;
    std::map<std::string, double> asymptote_gap;   ///< |eta(E_top)-gaseous|/gaseous per curve
    std::map<std::string, double> reversal_points; ///< per detected curve pair
};

/// eta_max / t_max curve family over the evaporation-rate grid for every
/// (d, delta) monosectional, plus the gaseous baseline curve. Per-point
/// failures are flagged; the sweep continues.
SweepResult monosectional_sweep(const CombustionEvaluator& eval, const SweepSpec& spec);

/// Nine random distributions (symmetric Dirichlet over all sections,
/// scaled to total 1) plus the monosectional control delta_{d=4} = 1.
SweepResult polysectional_random_sweep(const CombustionEvaluator& eval,
                                       const SweepSpec& spec, int n_random = 9);

struct DofLadderRow {
    int dof = 0;
    double e_bar = 0.0;
    Chromosome best;
    double best_score = 0.0;
    double eta_max = 0.0;
    double t_max = 0.0;
    double dominant_share = 0.0;  ///< largest fraction / total liquid
    int generations = 0;
    bool ok = false;
};

struct DofLadderResult {
    FitnessKind kind = FitnessKind::eta_max;
    std::vector<DofLadderRow> rows;
};

/// GA optimization per (DoF, e_bar) pair. Seeds are derived
/// deterministically from the spec seed and the pair indices.
DofLadderResult dof_ladder(const CombustionEvaluator& eval, const SweepSpec& spec,
                           FitnessKind kind, const GAConfig& ga_base);

/// Curves eta_max(E; Pe) and t_max(E; Pe) for the given named
/// distributions (typically the monosectional trio and DoF-6 optima).
SweepResult pe_sensitivity(const CombustionEvaluator& eval, const SweepSpec& spec,
                           const std::map<std::string, std::vector<double>>& idsds);

struct SpreadingResult {
    SweepResult sweep;                       ///< spread curves + monosectional family
    bool bounded = true;                     ///< no polysectional exceeds the family max
    double worst_violation = 0.0;            ///< max over grid of (poly - family max)
    std::map<std::string, std::vector<double>> distributions;
};

/// Progressively wider distributions around `center_section`, all summing
/// to total_delta, checked pointwise against the nine-monosectional family
/// (same total) and the uniform touchstone.
SpreadingResult spreading_validation(const CombustionEvaluator& eval,
                                     int center_section, double total_delta,
                                     int n_spreads,
                                     const std::vector<double>& e_bar_grid);

/// First grid interval where the ordering of two curves flips, refined by
/// bisection on e_bar to a relative width of 1e-3. `pair_values` returns
/// (first, second) curve values at a given e_bar. nullopt when the
/// ordering never flips.
std::optional<double> detect_reversal(
    const std::function<std::pair<double, double>(double)>& pair_values,
    const std::vector<double>& e_bar_grid);

} // namespace sprayflame

#endif
