#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sprayflame/artifacts.hpp"
#include "sprayflame/experiments.hpp"

using namespace sprayflame;

namespace {

// small evaluator for fast sweeps; accurate enough for orderings
CombustionEvaluator small_eval(double e_bar = 100.0) {
    ModelParams p;
    p.e_bar = e_bar;
    p.n_modes = 96;
    return CombustionEvaluator(p, FieldGrid::uniform(121, 241, 0.6));
}

SweepSpec small_spec() {
    SweepSpec spec;
    spec.e_bar_grid = SweepSpec::log_grid(1.0, 1e6, 8);
    spec.d_list = {1, 5};
    spec.delta_list = {0.1, 0.7};
    spec.pe_list = {10.0};
    spec.dof_list = {1};
    return spec;
}

} // namespace

TEST_CASE("log grid and spec validation") {
    const auto g = SweepSpec::log_grid(1.0, 1e6, 7);
    CHECK(g.size() == 7);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(1e6));
    CHECK(g[1] == doctest::Approx(10.0));

    SweepSpec bad = small_spec();
    bad.e_bar_grid = {10.0, 5.0};
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = small_spec();
    bad.e_bar_grid.clear();
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("reversal detection") {
    const std::vector<double> grid = {0.1, 0.5, 1.5, 2.0};

    // identical curves never flip
    CHECK_FALSE(detect_reversal([](double) { return std::make_pair(1.0, 1.0); }, grid)
                    .has_value());

    // analytic crossing of f1 = E and f2 = 2 - E at E = 1
    const auto rev = detect_reversal(
        [](double e) { return std::make_pair(e, 2.0 - e); }, grid);
    REQUIRE(rev.has_value());
    CHECK(*rev == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("monosectional sweep structure") {
    const auto eval = small_eval();
    const auto spec = small_spec();
    const auto result = monosectional_sweep(eval, spec);

    // 4 curves + gaseous, 8 points each
    CHECK(result.rows.size() == 5 * 8);
    for (const auto& row : result.rows)
        CHECK(row.ok);

    // the gaseous curve ignores the evaporation rate
    double gas_first = -1.0;
    for (const auto& row : result.rows)
        if (row.curve == "gaseous") {
            if (gas_first < 0.0)
                gas_first = row.eta_max;
            CHECK(row.eta_max == doctest::Approx(gas_first).epsilon(1e-12));
        }
    CHECK(result.gaseous_eta > 0.1);
    CHECK(result.gaseous_t == doctest::Approx(0.3 / 1.3).epsilon(1e-3));

    // every curve decays onto the gaseous height at the top of the grid
    for (const auto& [curve, gap] : result.asymptote_gap)
        CHECK(gap <= 0.05);

    // the lightest/heaviest ordering flips somewhere on the grid
    CHECK(result.reversal_points.count("d5") == 1);

    // rows reproduce from their recorded inputs
    const auto& probe = result.rows[13];
    const auto again = eval.metrics_at(probe.delta, probe.e_bar, probe.peclet);
    REQUIRE(again.has_value());
    CHECK(again->eta_max == doctest::Approx(probe.eta_max).epsilon(1e-12));
    CHECK(again->t_max == doctest::Approx(probe.t_max).epsilon(1e-12));
}

TEST_CASE("random polysectional batch with monosectional control") {
    const auto eval = small_eval();
    auto spec = small_spec();
    spec.rng_seed = 4242;
    // peaks are narrow in log E; the grid must be dense enough to catch
    // the control's maximum
    spec.e_bar_grid = SweepSpec::log_grid(1.0, 1e6, 25);
    const auto a = polysectional_random_sweep(eval, spec, 5);
    const auto b = polysectional_random_sweep(eval, spec, 5);

    // deterministic generation: identical tables
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].curve == b.rows[i].curve);
        CHECK(a.rows[i].eta_max == b.rows[i].eta_max);
        CHECK(a.rows[i].delta == b.rows[i].delta);
    }

    // every random iDSD sums to one before any capping
    for (const auto& row : a.rows) {
        if (row.curve == "gaseous")
            continue;
        double sum = 0.0;
        for (double d : row.delta)
            sum += d;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }

    // the control is a monosectional on section 4
    bool control_seen = false;
    double control_peak = 0.0;
    std::map<std::string, double> peaks;
    for (const auto& row : a.rows) {
        peaks[row.curve] = std::max(peaks[row.curve], row.eta_max);
        if (row.curve == "control_mono") {
            control_seen = true;
            control_peak = std::max(control_peak, row.eta_max);
            CHECK(row.delta[3] == doctest::Approx(1.0));
        }
    }
    REQUIRE(control_seen);
    for (const auto& [curve, peak] : peaks)
        if (curve.rfind("random", 0) == 0)
            CHECK(peak <= control_peak + 1e-9);
}

TEST_CASE("spreading validation composes and bounds") {
    const auto eval = small_eval();
    const auto e_grid = SweepSpec::log_grid(1.0, 1e6, 25);
    const auto result = spreading_validation(eval, 5, 0.7, 7, e_grid);

    // the stated composition of the second spread
    const auto& s2 = result.distributions.at("spread2");
    CHECK(s2[3] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s2[4] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s2[5] == doctest::Approx(0.05).epsilon(1e-12));

    // every distribution carries the same total liquid
    for (const auto& [name, delta] : result.distributions) {
        double sum = 0.0;
        for (double d : delta)
            sum += d;
        CHECK(sum == doctest::Approx(0.7).epsilon(1e-12));
    }
    // the widest spread occupies all nine sections
    for (double d : result.distributions.at("spread7"))
        CHECK(d > 0.0);

    CHECK(result.bounded);
    CHECK(result.worst_violation <= 1e-12);

    // the monosectional start of the suite attains the tallest peak
    std::map<std::string, double> peaks;
    for (const auto& row : result.sweep.rows)
        if (row.ok)
            peaks[row.curve] = std::max(peaks[row.curve], row.eta_max);
    for (int s = 2; s <= 7; ++s)
        CHECK(peaks.at("spread1") >= peaks.at("spread" + std::to_string(s)) - 1e-9);
    CHECK(peaks.at("spread1") >= peaks.at("uniform") - 1e-9);
}

TEST_CASE("pe sensitivity at the default Peclet reproduces sweep rows") {
    const auto eval = small_eval();
    auto spec = small_spec();
    spec.d_list = {5};
    spec.delta_list = {0.7};

    const auto sweep = monosectional_sweep(eval, spec);
    std::map<std::string, std::vector<double>> idsds;
    std::vector<double> delta(9, 0.0);
    delta[4] = 0.7;
    idsds["mono5"] = delta;
    const auto pe = pe_sensitivity(eval, spec, idsds);

    for (const auto& row : pe.rows) {
        REQUIRE(row.ok);
        bool matched = false;
        for (const auto& ref : sweep.rows) {
            if (ref.curve == "d5_delta0.700000" && ref.e_bar == row.e_bar) {
                CHECK(row.eta_max == doctest::Approx(ref.eta_max).epsilon(1e-12));
                CHECK(row.t_max == doctest::Approx(ref.t_max).epsilon(1e-12));
                matched = true;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("dof ladder structure on a tiny budget") {
    ModelParams p;
    p.n_modes = 64;
    const CombustionEvaluator eval(p, FieldGrid::uniform(81, 161, 0.6));
    SweepSpec spec = small_spec();
    spec.e_bar_grid = {200.0};
    spec.dof_list = {1, 2};

    GAConfig ga;
    ga.population_size = 16;
    ga.max_generations = 25;
    ga.rng_seed = 5;

    const auto ladder = dof_ladder(eval, spec, FitnessKind::eta_max, ga);
    REQUIRE(ladder.rows.size() == 2);
    for (const auto& row : ladder.rows) {
        CHECK(row.ok);
        CHECK(row.eta_max > 0.1);
        CHECK(row.dominant_share > 0.0);
        CHECK(row.dominant_share <= 1.0);
        CHECK(row.best_score == doctest::Approx(row.eta_max).epsilon(1e-9));
    }

    const std::string csv = dof_ladder_csv(ladder);
    CHECK(csv.rfind("dof,e_bar,best_score,", 0) == 0);
}

TEST_CASE("sweep artifacts") {
    const auto eval = small_eval();
    auto spec = small_spec();
    spec.d_list = {5};
    spec.delta_list = {0.7};
    spec.e_bar_grid = SweepSpec::log_grid(1.0, 100.0, 3);
    const auto result = monosectional_sweep(eval, spec);

    const std::string csv = sweep_csv(result);
    CHECK(csv.rfind("curve,e_bar,peclet,eta_max,t_max,flag", 0) == 0);
    CHECK(csv.find("no_flame") == std::string::npos);

    const auto summary = sweep_summary_json(result);
    CHECK(summary["rows"] == result.rows.size());
    CHECK(summary["failed_rows"] == 0);
    CHECK(summary.contains("gaseous_eta_max"));
}
