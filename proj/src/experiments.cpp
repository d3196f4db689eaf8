#include "sprayflame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <limits>
#include <stdexcept>

namespace sprayflame {

std::vector<double> SweepSpec::log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw std::invalid_argument("log grid needs 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        g[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    return g;
}

void validate(const SweepSpec& spec) {
    if (spec.e_bar_grid.empty())
        throw std::invalid_argument("e_bar_grid must be non-empty");
    for (size_t i = 1; i < spec.e_bar_grid.size(); ++i)
        if (!(spec.e_bar_grid[i] > spec.e_bar_grid[i - 1]))
            throw std::invalid_argument("e_bar_grid must be strictly increasing");
    if (spec.d_list.empty() || spec.delta_list.empty() || spec.pe_list.empty())
        throw std::invalid_argument("sweep lists must be non-empty");
}

namespace {

std::vector<double> mono_delta(int n_sections, int d, double amount) {
    std::vector<double> delta(n_sections, 0.0);
    delta.at(d - 1) = amount;
    return delta;
}

struct Task {
    std::string curve;
    std::vector<double> delta;
    double e_bar;
    double peclet;
};

// Deterministic-order parallel map over sweep points.
std::vector<SweepRow> run_tasks(const CombustionEvaluator& eval,
                                const std::vector<Task>& tasks) {
    std::vector<SweepRow> rows(tasks.size());
    const int n = static_cast<int>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < n; ++t) {
        const Task& task = tasks[t];
        SweepRow row;
        row.curve = task.curve;
        row.delta = task.delta;
        row.e_bar = task.e_bar;
        row.peclet = task.peclet;
        const auto metrics =
            eval.metrics_at(task.delta, task.e_bar, task.peclet, true, Execution::serial);
        if (metrics) {
            row.ok = true;
            row.eta_max = metrics->eta_max;
            row.t_max = metrics->t_max;
        }
        rows[t] = row;
    }
    return rows;
}

void fill_summary(const CombustionEvaluator& eval, SweepResult& result) {
    const std::vector<double> zero(eval.base().n_sections, 0.0);
    const auto gas = eval.metrics_for(zero, true, Execution::serial);
    if (gas) {
        result.gaseous_eta = gas->eta_max;
        result.gaseous_t = gas->t_max;
    }
    if (result.gaseous_eta <= 0.0)
        return;
    // asymptote gap at the top of the grid
    std::map<std::string, const SweepRow*> top_rows;
    for (const SweepRow& row : result.rows)
        if (row.ok) {
            auto& slot = top_rows[row.curve];
            if (!slot || row.e_bar > slot->e_bar)
                slot = &row;
        }
    for (const auto& [curve, row] : top_rows)
        result.asymptote_gap[curve] =
            std::abs(row->eta_max - result.gaseous_eta) / result.gaseous_eta;
}

} // namespace

SweepResult monosectional_sweep(const CombustionEvaluator& eval, const SweepSpec& spec) {
    validate(spec);
    const int n_sections = eval.base().n_sections;
    const double pe = eval.base().transport.peclet;
    std::vector<Task> tasks;
    for (int d : spec.d_list) {
        if (d < 1 || d > n_sections)
            throw std::invalid_argument("section index out of range in d_list");
        for (double amount : spec.delta_list) {
            const std::string curve = "d" + std::to_string(d) + "_delta" + std::to_string(amount);
            for (double e : spec.e_bar_grid)
                tasks.push_back({curve, mono_delta(n_sections, d, amount), e, pe});
        }
    }
    for (double e : spec.e_bar_grid)
        tasks.push_back({"gaseous", std::vector<double>(n_sections, 0.0), e, pe});

    SweepResult result;
    result.rows = run_tasks(eval, tasks);
    fill_summary(eval, result);

    // reversal between the lightest and heaviest fraction of each section
    if (spec.delta_list.size() >= 2) {
        const double lo = spec.delta_list.front(), hi = spec.delta_list.back();
        for (int d : spec.d_list) {
            auto values = [&](double e) {
                const auto a = eval.metrics_at(mono_delta(n_sections, d, lo), e, pe, false);
                const auto b = eval.metrics_at(mono_delta(n_sections, d, hi), e, pe, false);
                return std::make_pair(a ? a->eta_max : 0.0, b ? b->eta_max : 0.0);
            };
            const auto rev = detect_reversal(values, spec.e_bar_grid);
            if (rev)
                result.reversal_points["d" + std::to_string(d)] = *rev;
        }
    }
    return result;
}

SweepResult polysectional_random_sweep(const CombustionEvaluator& eval,
                                       const SweepSpec& spec, int n_random) {
    validate(spec);
    const int n_sections = eval.base().n_sections;
    const double pe = eval.base().transport.peclet;
    std::mt19937_64 rng(spec.rng_seed);
    std::exponential_distribution<double> expo(1.0);

    std::vector<Task> tasks;
    for (int r = 0; r < n_random; ++r) {
        std::vector<double> delta(n_sections);
        double sum = 0.0;
        for (double& v : delta) {
            v = expo(rng);
            sum += v;
        }
        for (double& v : delta)
            v /= sum;  // random iDSD with total exactly 1
        const std::string curve = "random" + std::to_string(r + 1);
        for (double e : spec.e_bar_grid)
            tasks.push_back({curve, delta, e, pe});
    }
    const int control_section = std::min(4, n_sections);
    for (double e : spec.e_bar_grid)
        tasks.push_back({"control_mono", mono_delta(n_sections, control_section, 1.0), e, pe});

    SweepResult result;
    result.rows = run_tasks(eval, tasks);
    fill_summary(eval, result);
    return result;
}

DofLadderResult dof_ladder(const CombustionEvaluator& eval, const SweepSpec& spec,
                           FitnessKind kind, const GAConfig& ga_base) {
    validate(spec);
    DofLadderResult result;
    result.kind = kind;
    for (size_t di = 0; di < spec.dof_list.size(); ++di) {
        for (size_t ei = 0; ei < spec.e_bar_grid.size(); ++ei) {
            const int dof = spec.dof_list[di];
            const double e_bar = spec.e_bar_grid[ei];

            ModelParams base = eval.base();
            base.e_bar = e_bar;
            CombustionEvaluator point_eval(base, eval.evaluator().grid());

            GAConfig cfg = ga_base;
            cfg.e_bar_const = e_bar;
            cfg.rng_seed = ga_base.rng_seed + 1000003ULL * di + 7919ULL * ei;

            DofLadderRow row;
            row.dof = dof;
            row.e_bar = e_bar;
            try {
                const GAResult ga = run_ga(cfg, dof, base.n_sections,
                                           point_eval.fitness(kind));
                row.best = ga.best;
                row.best_score = ga.best_score;
                row.generations = ga.generations;
                row.ok = ga.best_score > kNoFlameScore;
                if (row.ok) {
                    const auto metrics = point_eval.metrics_for(
                        point_eval.expand(ga.best), true, Execution::parallel);
                    if (metrics) {
                        row.eta_max = metrics->eta_max;
                        row.t_max = metrics->t_max;
                    }
                    double total = 0.0, top = 0.0;
                    for (double f : ga.best.fractions) {
                        total += f;
                        top = std::max(top, f);
                    }
                    row.dominant_share = total > 0.0 ? top / total : 0.0;
                }
            } catch (const std::exception&) {
                row.ok = false;
            }
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult pe_sensitivity(const CombustionEvaluator& eval, const SweepSpec& spec,
                           const std::map<std::string, std::vector<double>>& idsds) {
    validate(spec);
    std::vector<Task> tasks;
    for (const auto& [name, delta] : idsds) {
        if (static_cast<int>(delta.size()) != eval.base().n_sections)
            throw std::invalid_argument("iDSD size does not match section count");
        for (double pe : spec.pe_list) {
            const std::string curve = name + "_pe" + std::to_string(pe);
            for (double e : spec.e_bar_grid)
                tasks.push_back({curve, delta, e, pe});
        }
    }
    SweepResult result;
    result.rows = run_tasks(eval, tasks);
    fill_summary(eval, result);
    return result;
}

SpreadingResult spreading_validation(const CombustionEvaluator& eval,
                                     int center_section, double total_delta,
                                     int n_spreads,
                                     const std::vector<double>& e_bar_grid) {
    const int n_sections = eval.base().n_sections;
    if (center_section < 1 || center_section > n_sections)
        throw std::invalid_argument("center_section out of range");
    if (n_spreads < 1 || n_spreads > 7)
        throw std::invalid_argument("n_spreads must lie in [1,7]");

    // Normalized composition stencils of growing width; each sums to 1 and
    // is scaled by total_delta. Offsets are relative to the center section.
    static const std::vector<std::vector<std::pair<int, double>>> stencils = {
        {{0, 1.0}},
        {{-1, 1.0 / 14}, {0, 12.0 / 14}, {1, 1.0 / 14}},
        {{-1, 1.0 / 7}, {0, 5.0 / 7}, {1, 1.0 / 7}},
        {{-2, 1.0 / 14}, {-1, 2.0 / 14}, {0, 8.0 / 14}, {1, 2.0 / 14}, {2, 1.0 / 14}},
        {{-2, 0.1}, {-1, 12.0 / 70}, {0, 32.0 / 70}, {1, 12.0 / 70}, {2, 0.1}},
        {{-3, 4.0 / 70}, {-2, 8.0 / 70}, {-1, 12.0 / 70}, {0, 22.0 / 70},
         {1, 12.0 / 70}, {2, 8.0 / 70}, {3, 4.0 / 70}},
        {{-4, 2.0 / 70}, {-3, 4.0 / 70}, {-2, 8.0 / 70}, {-1, 12.0 / 70},
         {0, 18.0 / 70}, {1, 12.0 / 70}, {2, 8.0 / 70}, {3, 4.0 / 70}, {4, 2.0 / 70}},
    };

    SpreadingResult result;
    const double pe = eval.base().transport.peclet;
    std::vector<Task> tasks;
    for (int s = 0; s < n_spreads; ++s) {
        std::vector<double> delta(n_sections, 0.0);
        for (const auto& [off, w] : stencils[s]) {
            const int d = center_section + off;
            if (d < 1 || d > n_sections)
                throw std::invalid_argument("spread stencil leaves the section grid");
            delta[d - 1] += w * total_delta;
        }
        const std::string curve = "spread" + std::to_string(s + 1);
        result.distributions[curve] = delta;
        for (double e : e_bar_grid)
            tasks.push_back({curve, delta, e, pe});
    }
    {
        std::vector<double> uniform(n_sections, total_delta / n_sections);
        result.distributions["uniform"] = uniform;
        for (double e : e_bar_grid)
            tasks.push_back({"uniform", uniform, e, pe});
    }
    for (int d = 1; d <= n_sections; ++d) {
        const std::string curve = "mono_d" + std::to_string(d);
        const auto delta = mono_delta(n_sections, d, total_delta);
        result.distributions[curve] = delta;
        for (double e : e_bar_grid)
            tasks.push_back({curve, delta, e, pe});
    }

    result.sweep.rows = run_tasks(eval, tasks);
    fill_summary(eval, result.sweep);

    // pointwise bounding of every polysectional by the monosectional family
    std::map<double, double> family_max;
    for (const SweepRow& row : result.sweep.rows)
        if (row.ok && row.curve.rfind("mono_d", 0) == 0) {
            auto [it, inserted] = family_max.try_emplace(row.e_bar, row.eta_max);
            if (!inserted)
                it->second = std::max(it->second, row.eta_max);
        }
    result.worst_violation = -std::numeric_limits<double>::infinity();
    for (const SweepRow& row : result.sweep.rows) {
        if (!row.ok || row.curve.rfind("mono_d", 0) == 0 || row.curve == "spread1")
            continue;
        const auto it = family_max.find(row.e_bar);
        if (it == family_max.end())
            continue;
        result.worst_violation = std::max(result.worst_violation, row.eta_max - it->second);
    }
    result.bounded = result.worst_violation <= 1e-12;
    return result;
}

std::optional<double> detect_reversal(
    const std::function<std::pair<double, double>(double)>& pair_values,
    const std::vector<double>& e_bar_grid) {
    if (e_bar_grid.size() < 2)
        throw std::invalid_argument("reversal detection needs at least 2 grid points");
    auto diff = [&](double e) {
        const auto [a, b] = pair_values(e);
        return b - a;
    };
    double prev = diff(e_bar_grid[0]);
    double prev_e = e_bar_grid[0];
    for (size_t i = 1; i < e_bar_grid.size(); ++i) {
        const double cur = diff(e_bar_grid[i]);
        if (cur == 0.0)
            continue;
        if (prev == 0.0) {
            prev = cur;
            prev_e = e_bar_grid[i];
            continue;
        }
        if ((prev > 0.0) != (cur > 0.0)) {
            double lo = prev_e, hi = e_bar_grid[i];
            double flo = prev;
            while ((hi - lo) / hi > 1e-3) {
                const double mid = 0.5 * (lo + hi);
                const double fm = diff(mid);
                if (fm == 0.0)
                    return mid;
                if ((flo > 0.0) == (fm > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
        prev_e = e_bar_grid[i];
    }
    return std::nullopt;
}

} // namespace sprayflame
