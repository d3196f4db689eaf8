#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "sprayflame/fitness.hpp"
#include "sprayflame/ga.hpp"

using namespace sprayflame;

TEST_CASE("config validation") {
    GAConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.population_size = 1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = GAConfig{};
    cfg.elite_parents = 1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = GAConfig{};
    cfg.mutation_rate = 1.5;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("repair: rescale, dedupe, idempotence") {
    Chromosome c{{3, 5}, {0.8, 0.6}};  // sum 1.4 over cap 0.7
    repair(c, 0.7, 9);
    CHECK(c.fractions[0] == doctest::Approx(0.4));
    CHECK(c.fractions[1] == doctest::Approx(0.3));

    Chromosome feasible{{2, 7}, {0.2, 0.3}};
    Chromosome copy = feasible;
    repair(copy, 0.7, 9);
    CHECK(copy.sections == feasible.sections);
    CHECK(copy.fractions == feasible.fractions);

    Chromosome dup{{3, 3}, {0.2, 0.3}};
    repair(dup, 0.7, 9);
    CHECK(dup.sections[0] != dup.sections[1]);
    std::multiset<double> fracs(dup.fractions.begin(), dup.fractions.end());
    CHECK(fracs == std::multiset<double>{0.2, 0.3});

    Chromosome negative{{4}, {-0.2}};
    repair(negative, 0.7, 9);
    CHECK(negative.fractions[0] == 0.0);
}

TEST_CASE("population initialization") {
    GAConfig cfg;
    cfg.population_size = 40;
    std::mt19937_64 rng(99);
    const auto pop = init_population(cfg, 1, 9, rng);
    for (const auto& c : pop) {
        CHECK(c.k() == 1);
        CHECK(c.sections[0] >= 1);
        CHECK(c.sections[0] <= 9);
        CHECK(c.fractions[0] <= 0.7 + 1e-12);
        CHECK(c.fractions[0] == doctest::Approx(0.7));  // simplex scaled to the cap
    }

    std::mt19937_64 rng2(99);
    const auto full = init_population(cfg, 9, 9, rng2);
    for (const auto& c : full) {
        std::set<int> secs(c.sections.begin(), c.sections.end());
        CHECK(secs.size() == 9);
        double sum = 0.0;
        for (double f : c.fractions)
            sum += f;
        CHECK(sum <= 0.7 + 1e-9);
    }

    // determinism of the stream
    std::mt19937_64 ra(7), rb(7);
    const auto pa = init_population(cfg, 3, 9, ra);
    const auto pb = init_population(cfg, 3, 9, rb);
    for (size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].sections == pb[i].sections);
        CHECK(pa[i].fractions == pb[i].fractions);
    }

    CHECK_THROWS_AS(init_population(cfg, 10, 9, rng), std::invalid_argument);
}

TEST_CASE("parent selection") {
    const std::vector<double> scores = {3.0, 1.0, 2.0};
    const auto top = select_parents(scores, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0] == 0);
    CHECK(top[1] == 2);

    const std::vector<double> equal = {5.0, 5.0, 5.0, 5.0};
    const auto tie = select_parents(equal, 2);
    CHECK(tie[0] == 0);
    CHECK(tie[1] == 1);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> many(100);
    for (double& s : many)
        s = unif(rng);
    const auto got = select_parents(many, 2);
    auto sorted = many;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(many[got[0]] == sorted[0]);
    CHECK(many[got[1]] == sorted[1]);
}

TEST_CASE("crossover swaps tails at a gene boundary") {
    std::mt19937_64 rng(11);
    const Chromosome pa{{1, 3, 5}, {0.1, 0.2, 0.3}};
    const Chromosome pb{{2, 4, 6}, {0.15, 0.25, 0.35}};

    auto [sa, sb] = crossover(pa, pa, rng);
    CHECK(sa.sections == pa.sections);
    CHECK(sa.fractions == pa.fractions);
    CHECK(sb.sections == pa.sections);

    for (int trial = 0; trial < 1000; ++trial) {
        const auto [ca, cb] = crossover(pa, pb, rng);
        for (int g = 0; g < 3; ++g) {
            CHECK((ca.sections[g] == pa.sections[g] || ca.sections[g] == pb.sections[g]));
            CHECK((ca.fractions[g] == pa.fractions[g] || ca.fractions[g] == pb.fractions[g]));
            CHECK((cb.sections[g] == pa.sections[g] || cb.sections[g] == pb.sections[g]));
            // children partition the parents' genes
            if (ca.sections[g] == pa.sections[g])
                CHECK(cb.sections[g] == pb.sections[g]);
        }
    }
}

TEST_CASE("mutation: identity, permutation, step statistics") {
    std::mt19937_64 rng(5);
    Chromosome c{{2, 6}, {0.1, 0.4}};
    Chromosome before = c;
    mutate(c, 0.0, 0.7, 9, rng);
    CHECK(c.sections == before.sections);
    CHECK(c.fractions == before.fractions);

    // with every section occupied there is nowhere to resample to
    Chromosome full{{1, 2, 3}, {0.1, 0.1, 0.1}};
    mutate(full, 1.0, 0.7, 3, rng);
    std::set<int> secs(full.sections.begin(), full.sections.end());
    CHECK(secs == std::set<int>{1, 2, 3});

    // mean absolute fraction step at rate 1/2 ~ 0.5 E|N(0, 0.05 cap)|
    const double sigma = 0.05 * 0.7;
    const double expected = 0.5 * sigma * std::sqrt(2.0 / std::numbers::pi);
    double acc = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        Chromosome x{{5}, {0.3}};
        mutate(x, 0.5, 0.7, 9, rng);
        acc += std::abs(x.fractions[0] - 0.3);
    }
    const double mean = acc / trials;
    CHECK(std::abs(mean - expected) <= 0.1 * expected);
}

TEST_CASE("bit-string codec") {
    const Chromosome c{{3, 9}, {0.15, 0.62}};
    const auto bits = encode(c, 0.7);
    CHECK(bits.size() == 40);
    const auto back = decode(bits, 0.7);
    CHECK(back.sections == c.sections);
    for (int g = 0; g < 2; ++g)
        CHECK(std::abs(back.fractions[g] - c.fractions[g]) <= 0.7 / 65536.0);

    // all-zero string decodes to the origin
    const std::vector<std::uint8_t> zeros(20, 0);
    const auto origin = decode(zeros, 0.7);
    CHECK(origin.sections[0] == 1);
    CHECK(origin.fractions[0] == 0.0);

    CHECK_THROWS_AS(decode(std::vector<std::uint8_t>(7, 0), 0.7), std::invalid_argument);
    CHECK_THROWS_AS(decode(std::vector<std::uint8_t>{}, 0.7), std::invalid_argument);

    // flipping one bit changes exactly one gene
    for (size_t i = 0; i < bits.size(); ++i) {
        auto flipped = bits;
        flipped[i] ^= 1;
        const auto d = decode(flipped, 0.7);
        int changed_sections = 0, changed_fractions = 0;
        for (int g = 0; g < 2; ++g) {
            changed_sections += d.sections[g] != back.sections[g];
            changed_fractions += d.fractions[g] != back.fractions[g];
        }
        const bool is_section_bit = (i % 20) < 4;
        CHECK(changed_sections + changed_fractions == 1);
        if (is_section_bit)
            CHECK(changed_sections == 1);
        else
            CHECK(changed_fractions == 1);
    }
}

TEST_CASE("constraint set: equality as paired inequalities") {
    ConstraintSet cs;
    LinearFunctional h;
    h.weights = {1.0, 1.0};
    h.offset = -0.5;  // x1 + x2 = 0.5
    cs.add_equality(h, 1e-6);
    CHECK(cs.inequalities().size() == 2);

    std::vector<double> x = {0.4, 0.3};
    CHECK_FALSE(cs.feasible(x));
    cs.repair(x);
    CHECK(std::abs(x[0] + x[1] - 0.5) <= 1e-12);
    CHECK(cs.feasible(x, 1e-12));

    // an optimization run subject to the equality keeps |h| within the band
    GAConfig cfg;
    cfg.population_size = 40;
    cfg.max_generations = 60;
    cfg.rng_seed = 3;
    cfg.delta_cap = 1.0;
    const auto result = run_ga(
        cfg, 2, 9,
        [](const Chromosome& c) { return c.fractions[0] - 0.1 * c.fractions[1]; }, &cs,
        Execution::serial);
    const double residual = result.best.fractions[0] + result.best.fractions[1] - 0.5;
    CHECK(std::abs(residual) <= 1e-6);
    CHECK(result.best.fractions[0] == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("run: elitist history, determinism, stagnation window") {
    GAConfig cfg;
    cfg.population_size = 60;
    cfg.max_generations = 150;
    cfg.termination_cost_delta = 0.0;
    cfg.rng_seed = 17;

    auto weighted = [](const Chromosome& c) {
        double acc = 0.0;
        for (int g = 0; g < c.k(); ++g)
            acc += c.sections[g] * c.fractions[g];
        return acc;
    };

    const auto a = run_ga(cfg, 3, 9, weighted, nullptr, Execution::serial);
    for (size_t i = 1; i < a.history.size(); ++i)
        CHECK(a.history[i].best >= a.history[i - 1].best);

    const auto b = run_ga(cfg, 3, 9, weighted, nullptr, Execution::serial);
    CHECK(a.best_score == b.best_score);
    CHECK(a.best.sections == b.best.sections);
    CHECK(a.best.fractions == b.best.fractions);
    REQUIRE(a.history.size() == b.history.size());
    for (size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].best == b.history[i].best);
        CHECK(a.history[i].mean == b.history[i].mean);
    }

    // parallel evaluation does not change the result
    const auto par = run_ga(cfg, 3, 9, weighted, nullptr, Execution::parallel);
    CHECK(par.best_score == a.best_score);
    CHECK(par.best.fractions == a.best.fractions);

    // a huge termination delta stops right after the window fills
    GAConfig stop = cfg;
    stop.max_generations = 200;
    stop.termination_cost_delta = 1e9;
    const auto s = run_ga(stop, 3, 9, weighted, nullptr, Execution::serial);
    CHECK(s.history.size() <= kTerminationWindow + 1);

    // the best weighted candidate concentrates nearly everything on section 9
    CHECK(a.best_score >= 9.0 * 0.7 - 0.02);
}

TEST_CASE("toy objectives") {
    // the sinc bump peaks at exactly 2
    CHECK(sinc_peak_objective(10.0, 10.0, -1.0) == doctest::Approx(2.0));

    // dense-grid maximum over the toy domain
    double grid_best = -1e9;
    for (int i = 0; i <= 200; ++i)
        for (int k = 0; k <= 40; ++k) {
            const double x = 20.0 * i / 200.0;
            const double z = -1.0 + 2.0 * k / 40.0;
            grid_best = std::max(grid_best, sinc_peak_objective(x, x, z));
        }
    CHECK(grid_best <= 2.0 + 1e-12);
    CHECK(grid_best >= 1.95);

    GAConfig cfg;
    cfg.population_size = 100;
    cfg.max_generations = 200;
    cfg.rng_seed = 42;
    cfg.delta_cap = 1.0;
    cfg.termination_cost_delta = 0.0;
    const auto result = run_ga(cfg, 3, 3, sinc_toy_fitness, nullptr, Execution::serial);
    CHECK(result.best_score >= 0.99 * 2.0);
    CHECK(result.best.fractions[0] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(result.best.fractions[1] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(result.best.fractions[2] <= 0.05);

    // bit-count fitness improves from the first generation on
    GAConfig l1 = cfg;
    l1.max_generations = 60;
    l1.delta_cap = 0.7;
    const auto ones = run_ga(
        l1, 4, 9, [&](const Chromosome& c) { return l1_bits_fitness(c, 0.7); }, nullptr,
        Execution::serial);
    CHECK(ones.history.back().best > ones.history.front().mean);
    CHECK(ones.best_score >= 45.0);  // the cap excludes most all-ones patterns
}

TEST_CASE("fitness cache avoids repeated evaluations") {
    GAConfig cfg;
    cfg.population_size = 24;
    cfg.max_generations = 30;
    cfg.rng_seed = 9;
    long long calls = 0;
    const auto result = run_ga(
        cfg, 2, 9,
        [&calls](const Chromosome& c) {
            ++calls;
            return c.fractions[0] + c.fractions[1];
        },
        nullptr, Execution::serial);
    CHECK(calls == result.evaluations);
    CHECK(result.cache_hits > 0);
    CHECK(result.evaluations + result.cache_hits ==
          static_cast<long long>(cfg.population_size) * result.generations);
}
