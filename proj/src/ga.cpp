#include "sprayflame/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace sprayflame {

void validate(const GAConfig& cfg) {
    if (cfg.population_size < 2)
        throw std::invalid_argument("population_size must be >= 2");
    if (cfg.elite_parents < 2)
        throw std::invalid_argument("elite_parents must be >= 2");
    if (cfg.elite_parents > cfg.population_size)
        throw std::invalid_argument("elite_parents cannot exceed population_size");
    if (cfg.max_generations < 1)
        throw std::invalid_argument("max_generations must be >= 1");
    if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0))
        throw std::invalid_argument("mutation_rate must lie in [0,1]");
    if (!(cfg.delta_cap > 0.0 && cfg.delta_cap <= 1.0))
        throw std::invalid_argument("delta_cap must lie in (0,1]");
    if (!(cfg.termination_cost_delta >= 0.0))
        throw std::invalid_argument("termination_cost_delta must be non-negative");
    if (!(cfg.e_bar_const > 0.0))
        throw std::invalid_argument("e_bar_const must be positive");
}

double LinearFunctional::operator()(std::span<const double> x) const {
    double acc = offset;
    const size_t n = std::min(weights.size(), x.size());
    for (size_t i = 0; i < n; ++i)
        acc += weights[i] * x[i];
    return acc;
}

void ConstraintSet::add_inequality(LinearFunctional g) {
    inequalities_.push_back(std::move(g));
}

void ConstraintSet::add_equality(LinearFunctional h, double band) {
    LinearFunctional upper = h;
    upper.offset -= band;
    LinearFunctional lower;
    lower.weights.resize(h.weights.size());
    for (size_t i = 0; i < h.weights.size(); ++i)
        lower.weights[i] = -h.weights[i];
    lower.offset = -h.offset - band;
    inequalities_.push_back(std::move(upper));
    inequalities_.push_back(std::move(lower));
    equalities_.emplace_back(std::move(h), band);
}

double ConstraintSet::violation(std::span<const double> x) const {
    double total = 0.0;
    for (const auto& g : inequalities_)
        total += std::max(0.0, g(x));
    return total;
}

bool ConstraintSet::feasible(std::span<const double> x, double tol) const {
    for (const auto& g : inequalities_)
        if (g(x) > tol)
            return false;
    return true;
}

void ConstraintSet::repair(std::span<double> x, int passes) const {
    for (int pass = 0; pass < passes; ++pass) {
        for (const auto& [h, band] : equalities_) {
            double norm2 = 0.0;
            for (double w : h.weights)
                norm2 += w * w;
            if (norm2 == 0.0)
                continue;
            const double r = h(x) / norm2;
            for (size_t i = 0; i < x.size() && i < h.weights.size(); ++i)
                x[i] -= r * h.weights[i];
        }
        for (const auto& g : inequalities_) {
            const double v = g(x);
            if (v <= 0.0)
                continue;
            double norm2 = 0.0;
            for (double w : g.weights)
                norm2 += w * w;
            if (norm2 == 0.0)
                continue;
            for (size_t i = 0; i < x.size() && i < g.weights.size(); ++i)
                x[i] -= v * g.weights[i] / norm2;
        }
    }
}

void repair(Chromosome& chromosome, double delta_cap, int n_sections) {
    const int k = chromosome.k();
    if (static_cast<int>(chromosome.fractions.size()) != k)
        throw std::invalid_argument("sections/fractions size mismatch");

    std::vector<bool> used(n_sections + 1, false);
    for (int g = 0; g < k; ++g) {
        int& d = chromosome.sections[g];
        d = std::clamp(d, 1, n_sections);
        if (used[d]) {
            int free_idx = 1;
            while (free_idx <= n_sections && used[free_idx])
                ++free_idx;
            if (free_idx > n_sections)
                throw std::invalid_argument("k_dof exceeds the number of sections");
            d = free_idx;
        }
        used[d] = true;
    }

    double sum = 0.0;
    for (double& f : chromosome.fractions) {
        if (!(f >= 0.0))
            f = 0.0;
        sum += f;
    }
    if (sum > delta_cap && sum > 0.0) {
        const double scale = delta_cap / sum;
        for (double& f : chromosome.fractions)
            f *= scale;
    }

    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return chromosome.sections[a] < chromosome.sections[b];
    });
    Chromosome sorted;
    sorted.sections.reserve(k);
    sorted.fractions.reserve(k);
    for (int idx : order) {
        sorted.sections.push_back(chromosome.sections[idx]);
        sorted.fractions.push_back(chromosome.fractions[idx]);
    }
    chromosome = std::move(sorted);
}

Chromosome random_chromosome(int k_dof, int n_sections, double delta_cap,
                             std::mt19937_64& rng) {
    if (k_dof > n_sections)
        throw std::invalid_argument("k_dof cannot exceed the number of sections");
    Chromosome c;
    // sections without replacement
    std::vector<int> pool(n_sections);
    std::iota(pool.begin(), pool.end(), 1);
    for (int g = 0; g < k_dof; ++g) {
        std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
        const int at = pick(rng);
        c.sections.push_back(pool[at]);
        pool.erase(pool.begin() + at);
    }
    // uniform on the simplex scaled to the cap
    std::exponential_distribution<double> expo(1.0);
    double sum = 0.0;
    for (int g = 0; g < k_dof; ++g) {
        const double e = expo(rng);
        c.fractions.push_back(e);
        sum += e;
    }
    if (sum > 0.0)
        for (double& f : c.fractions)
            f *= delta_cap / sum;
    repair(c, delta_cap, n_sections);
    return c;
}

std::vector<Chromosome> init_population(const GAConfig& cfg, int k_dof, int n_sections,
                                        std::mt19937_64& rng) {
    validate(cfg);
    std::vector<Chromosome> pop;
    pop.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i)
        pop.push_back(random_chromosome(k_dof, n_sections, cfg.delta_cap, rng));
    return pop;
}

std::vector<int> select_parents(std::span<const double> scores, int elite_parents) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores[a] > scores[b];
    });
    order.resize(std::min<size_t>(order.size(), static_cast<size_t>(elite_parents)));
    return order;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a,
                                            const Chromosome& parent_b,
                                            std::mt19937_64& rng) {
    if (parent_a.k() != parent_b.k())
        throw std::invalid_argument("parents must have the same number of genes");
    const int n_genes = 2 * parent_a.k();
    std::uniform_int_distribution<int> pick(0, n_genes);
    const int cut = pick(rng);

    Chromosome a = parent_a, b = parent_b;
    for (int g = cut; g < n_genes; ++g) {
        const int pair_idx = g / 2;
        if (g % 2 == 0)
            std::swap(a.sections[pair_idx], b.sections[pair_idx]);
        else
            std::swap(a.fractions[pair_idx], b.fractions[pair_idx]);
    }
    return {std::move(a), std::move(b)};
}

void mutate(Chromosome& chromosome, double rate, double delta_cap, int n_sections,
            std::mt19937_64& rng) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("mutation rate must lie in [0,1]");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::normal_distribution<double> step(0.0, 0.05 * delta_cap);

    for (int g = 0; g < chromosome.k(); ++g) {
        if (rate > 0.0 && coin(rng) < rate) {
            std::vector<int> unused;
            for (int d = 1; d <= n_sections; ++d)
                if (std::find(chromosome.sections.begin(), chromosome.sections.end(), d) ==
                    chromosome.sections.end())
                    unused.push_back(d);
            if (!unused.empty()) {
                std::uniform_int_distribution<int> pick(0, static_cast<int>(unused.size()) - 1);
                chromosome.sections[g] = unused[pick(rng)];
            }
        }
        if (rate > 0.0 && coin(rng) < rate)
            chromosome.fractions[g] = std::max(0.0, chromosome.fractions[g] + step(rng));
    }
    repair(chromosome, delta_cap, n_sections);
}

std::vector<std::uint8_t> encode(const Chromosome& chromosome, double delta_cap) {
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<size_t>(chromosome.k()) * 20);
    for (int g = 0; g < chromosome.k(); ++g) {
        const unsigned d = static_cast<unsigned>(chromosome.sections[g] - 1) & 0xF;
        for (int bit = 3; bit >= 0; --bit)
            bits.push_back((d >> bit) & 1u);
        const double f = std::clamp(chromosome.fractions[g], 0.0, delta_cap);
        const unsigned quant =
            static_cast<unsigned>(std::lround(f / delta_cap * 65535.0)) & 0xFFFF;
        for (int bit = 15; bit >= 0; --bit)
            bits.push_back((quant >> bit) & 1u);
    }
    return bits;
}

Chromosome decode(std::span<const std::uint8_t> bits, double delta_cap) {
    if (bits.empty() || bits.size() % 20 != 0)
        throw std::invalid_argument("bit-string length must be a positive multiple of 20");
    Chromosome c;
    const int k = static_cast<int>(bits.size() / 20);
    for (int g = 0; g < k; ++g) {
        const std::uint8_t* p = bits.data() + static_cast<size_t>(g) * 20;
        unsigned d = 0;
        for (int bit = 0; bit < 4; ++bit)
            d = (d << 1) | (p[bit] & 1u);
        unsigned quant = 0;
        for (int bit = 4; bit < 20; ++bit)
            quant = (quant << 1) | (p[bit] & 1u);
        c.sections.push_back(static_cast<int>(d) + 1);
        c.fractions.push_back(static_cast<double>(quant) / 65535.0 * delta_cap);
    }
    return c;
}

namespace {

std::string cache_key(const Chromosome& chromosome, double delta_cap) {
    const auto bits = encode(chromosome, delta_cap);
    std::string key((bits.size() + 7) / 8, '\0');
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            key[i / 8] |= static_cast<char>(1 << (i % 8));
    return key;
}

void apply_constraints(Chromosome& c, const ConstraintSet* constraints, double delta_cap,
                       int n_sections) {
    if (!constraints)
        return;
    // alternate the linear projection with the non-negativity clip; the
    // pair converges onto the feasible intersection
    for (int pass = 0; pass < 64; ++pass) {
        constraints->repair(c.fractions, 1);
        bool clipped = false;
        for (double& f : c.fractions)
            if (f < 0.0) {
                f = 0.0;
                clipped = true;
            }
        if (!clipped && pass > 0)
            break;
    }
    repair(c, delta_cap, n_sections);
}

} // namespace

GAResult run_ga(const GAConfig& cfg, int k_dof, int n_sections, const FitnessFn& fitness,
                const ConstraintSet* constraints, Execution exec) {
    validate(cfg);
    if (k_dof < 1 || k_dof > n_sections)
        throw std::invalid_argument("k_dof must lie in [1, n_sections]");

    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<Chromosome> pop = init_population(cfg, k_dof, n_sections, rng);
    for (Chromosome& c : pop)
        apply_constraints(c, constraints, cfg.delta_cap, n_sections);

    GAResult result;
    std::unordered_map<std::string, double> cache;
    std::vector<double> scores(pop.size());

    auto evaluate_all = [&](const std::vector<Chromosome>& population) {
        std::vector<int> miss_index;
        std::vector<std::string> keys(population.size());
        for (size_t i = 0; i < population.size(); ++i) {
            keys[i] = cache_key(population[i], cfg.delta_cap);
            auto it = cache.find(keys[i]);
            if (it != cache.end()) {
                scores[i] = it->second;
                ++result.cache_hits;
            } else {
                miss_index.push_back(static_cast<int>(i));
            }
        }
        const int n_miss = static_cast<int>(miss_index.size());
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int m = 0; m < n_miss; ++m)
                scores[miss_index[m]] = fitness(population[miss_index[m]]);
        } else {
            for (int m = 0; m < n_miss; ++m)
                scores[miss_index[m]] = fitness(population[miss_index[m]]);
        }
        for (int m : miss_index) {
            cache.emplace(keys[m], scores[m]);
            ++result.evaluations;
            if (scores[m] <= kNoFlameScore)
                ++result.failed_evaluations;
        }
    };

    double best_score = -std::numeric_limits<double>::infinity();
    Chromosome best;

    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        evaluate_all(pop);

        GenerationStats stats{-std::numeric_limits<double>::infinity(),
                              0.0,
                              std::numeric_limits<double>::infinity()};
        for (size_t i = 0; i < pop.size(); ++i) {
            stats.best = std::max(stats.best, scores[i]);
            stats.worst = std::min(stats.worst, scores[i]);
            stats.mean += scores[i];
        }
        stats.mean /= static_cast<double>(pop.size());

        const auto parents = select_parents(scores, cfg.elite_parents);
        if (scores[parents[0]] > best_score) {
            best_score = scores[parents[0]];
            best = pop[parents[0]];
        }
        stats.best = std::max(stats.best, best_score);
        result.history.push_back(stats);
        result.generations = gen + 1;

        // stagnation window on the all-time best
        if (gen >= kTerminationWindow) {
            const double past = result.history[gen - kTerminationWindow].best;
            if (result.history[gen].best - past < cfg.termination_cost_delta)
                break;
        }
        if (gen + 1 == cfg.max_generations)
            break;

        // next generation: elites retained, remainder bred from the top two
        std::vector<Chromosome> next;
        next.reserve(pop.size());
        for (int p : parents)
            next.push_back(pop[p]);
        const Chromosome& pa = pop[parents[0]];
        const Chromosome& pb = pop[parents[1 % parents.size()]];
        while (next.size() < pop.size()) {
            auto [ca, cb] = crossover(pa, pb, rng);
            mutate(ca, cfg.mutation_rate, cfg.delta_cap, n_sections, rng);
            apply_constraints(ca, constraints, cfg.delta_cap, n_sections);
            next.push_back(std::move(ca));
            if (next.size() < pop.size()) {
                mutate(cb, cfg.mutation_rate, cfg.delta_cap, n_sections, rng);
                apply_constraints(cb, constraints, cfg.delta_cap, n_sections);
                next.push_back(std::move(cb));
            }
        }
        pop = std::move(next);
    }

    result.best = std::move(best);
    result.best_score = best_score;
    return result;
}

} // namespace sprayflame
