#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef SPRAYFLAME_HAVE_OPENMP
#include <omp.h>
#endif

#include "sprayflame/artifacts.hpp"
#include "sprayflame/config.hpp"
#include "sprayflame/experiments.hpp"
#include "sprayflame/fitness.hpp"
#include "sprayflame/front.hpp"

namespace sf = sprayflame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputeFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    long long seed = -1;
    int threads = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "run configuration file");
    cmd->add_option("--out", flags.out_dir, "output directory (overrides output.dir)");
    cmd->add_option("--set", flags.overrides, "extra key=value overrides")->take_all();
    cmd->add_option("--seed", flags.seed, "RNG seed (overrides ga and experiment seeds)");
    cmd->add_option("--threads", flags.threads, "worker thread cap (0 = runtime default)");
}

sf::RunConfig resolve_config(const CommonFlags& flags) {
    sf::RunConfig cfg;
    if (!flags.config_path.empty())
        cfg = sf::load_config_file(flags.config_path);
    else
        cfg.sweep.e_bar_grid = sf::SweepSpec::log_grid(1.0, 1e6, 40);
    for (const std::string& ov : flags.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + ov + "'");
        sf::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (!flags.out_dir.empty())
        cfg.out_dir = flags.out_dir;
    if (flags.seed >= 0) {
        cfg.ga.rng_seed = static_cast<std::uint64_t>(flags.seed);
        cfg.sweep.rng_seed = static_cast<std::uint64_t>(flags.seed);
    }
    if (flags.threads >= 0)
        cfg.threads = flags.threads;
    sf::validate(cfg);
#ifdef SPRAYFLAME_HAVE_OPENMP
    if (cfg.threads > 0)
        omp_set_num_threads(cfg.threads);
#endif
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

nlohmann::ordered_json config_echo_json(const sf::RunConfig& cfg) {
    nlohmann::ordered_json j;
    std::istringstream lines(cfg.echo());
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos)
            j[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

std::string artifact_path(const sf::RunConfig& cfg, const std::string& command,
                          const std::string& suffix) {
    return cfg.out_dir + "/" + command + "_" + cfg.hash() + suffix;
}

// Wall time goes to stderr and a sidecar so the primary artifacts stay
// byte-identical across reruns of the same seed.
class WallClock {
public:
    explicit WallClock(std::string path) : path_(std::move(path)) {}
    ~WallClock() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        nlohmann::ordered_json j;
        j["wall_seconds"] = seconds;
        try {
            sf::write_text_file(path_, j.dump(2) + "\n");
        } catch (...) {
        }
        std::cerr << "wall time: " << seconds << " s\n";
    }

private:
    std::string path_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_field(const sf::RunConfig& cfg) {
    WallClock clock(artifact_path(cfg, "field", ".timing.json"));
    const sf::FlameModel model = sf::FlameModel::assemble(cfg.model_params());
    const sf::FieldEvaluator evaluator(cfg.production_grid(), cfg.n_modes);

    std::vector<double> gamma_vals, gamma_t_vals;
    evaluator.evaluate(model.gas_field(), gamma_vals);
    evaluator.evaluate(model.temperature_field(), gamma_t_vals);
    sf::write_text_file(artifact_path(cfg, "field", ".csv"),
                        sf::field_csv(evaluator.grid(), gamma_vals, gamma_t_vals));

    sf::MetricsOptions opts;
    opts.front_tolerance = cfg.front_tolerance;
    const auto metrics = sf::flame_metrics(model, evaluator, opts);

    nlohmann::ordered_json j;
    j["config"] = config_echo_json(cfg);
    j["metrics"] = sf::metrics_json(metrics);
    sf::write_text_file(artifact_path(cfg, "field", ".metrics.json"), j.dump(2) + "\n");

    if (!metrics) {
        std::cerr << "no flame: gamma does not change sign on the grid\n";
        return kExitComputeFailure;
    }
    std::cout << "eta_max = " << sf::format_double(metrics->eta_max)
              << "  t_max = " << sf::format_double(metrics->t_max) << "\n";
    return kExitOk;
}

int cmd_optimize(const sf::RunConfig& cfg) {
    WallClock clock(artifact_path(cfg, "optimize", ".timing.json"));
    const sf::CombustionEvaluator eval(cfg.fitness_model_params(), cfg.fitness_grid(),
                                       cfg.front_tolerance);
    sf::GAConfig ga = cfg.ga;
    ga.e_bar_const = cfg.e_bar;

    const sf::GAResult result =
        sf::run_ga(ga, cfg.k_dof, cfg.n_sections, eval.fitness(cfg.fitness_kind()));

    nlohmann::ordered_json j;
    j["config"] = config_echo_json(cfg);
    j["fitness"] = cfg.fitness;
    j["constraints"] = {
        {"sum_fractions_leq", ga.delta_cap},
        {"e_bar_equality",
         {{"value", ga.e_bar_const},
          {"band", 1e-6},
          {"form", "two inequalities: h <= band and -h <= band"}}},
    };
    j["result"] = sf::ga_result_json(result, ga.delta_cap);
    if (result.best_score > sf::kNoFlameScore) {
        const auto metrics = eval.metrics_for(eval.expand(result.best), true,
                                              sf::Execution::parallel);
        j["best_metrics"] = sf::metrics_json(metrics);
    }
    sf::write_text_file(artifact_path(cfg, "optimize", ".json"), j.dump(2) + "\n");

    if (result.best_score <= sf::kNoFlameScore) {
        std::cerr << "optimization failed: no candidate produced a flame\n";
        return kExitComputeFailure;
    }
    std::cout << "best " << cfg.fitness << " = " << sf::format_double(result.best_score)
              << " after " << result.generations << " generations\n";
    return kExitOk;
}

int cmd_sweep(const sf::RunConfig& cfg) {
    WallClock clock(artifact_path(cfg, "sweep", ".timing.json"));
    const sf::CombustionEvaluator eval(cfg.fitness_model_params(), cfg.fitness_grid(),
                                       cfg.front_tolerance);
    const sf::SweepResult mono = sf::monosectional_sweep(eval, cfg.sweep);
    const sf::SweepResult poly = sf::polysectional_random_sweep(eval, cfg.sweep, cfg.n_random);

    sf::write_text_file(artifact_path(cfg, "sweep", ".mono.csv"), sf::sweep_csv(mono));
    sf::write_text_file(artifact_path(cfg, "sweep", ".poly.csv"), sf::sweep_csv(poly));

    nlohmann::ordered_json j;
    j["config"] = config_echo_json(cfg);
    j["monosectional"] = sf::sweep_summary_json(mono);
    j["polysectional"] = sf::sweep_summary_json(poly);
    sf::write_text_file(artifact_path(cfg, "sweep", ".summary.json"), j.dump(2) + "\n");

    int failures = 0;
    for (const auto& row : mono.rows)
        failures += row.ok ? 0 : 1;
    for (const auto& row : poly.rows)
        failures += row.ok ? 0 : 1;
    std::cout << "sweep rows: " << mono.rows.size() + poly.rows.size()
              << "  failures: " << failures << "\n";
    return kExitOk;
}

int cmd_pe(const sf::RunConfig& cfg) {
    WallClock clock(artifact_path(cfg, "pe", ".timing.json"));
    const sf::CombustionEvaluator eval(cfg.fitness_model_params(), cfg.fitness_grid(),
                                       cfg.front_tolerance);

    std::map<std::string, std::vector<double>> idsds;
    for (int d : {2, 5, 8}) {
        if (d <= cfg.n_sections) {
            std::vector<double> delta(cfg.n_sections, 0.0);
            delta[d - 1] = cfg.spread_total;
            idsds["mono_d" + std::to_string(d)] = delta;
        }
    }
    bool has_custom = false;
    for (double v : cfg.delta)
        has_custom |= v > 0.0;
    if (has_custom)
        idsds["config_idsd"] = cfg.delta;

    const sf::SweepResult result = sf::pe_sensitivity(eval, cfg.sweep, idsds);
    sf::write_text_file(artifact_path(cfg, "pe", ".csv"), sf::sweep_csv(result));

    nlohmann::ordered_json j;
    j["config"] = config_echo_json(cfg);
    j["summary"] = sf::sweep_summary_json(result);
    sf::write_text_file(artifact_path(cfg, "pe", ".summary.json"), j.dump(2) + "\n");
    std::cout << "pe rows: " << result.rows.size() << "\n";
    return kExitOk;
}

int cmd_validate(const sf::RunConfig& cfg) {
    WallClock clock(artifact_path(cfg, "validate", ".timing.json"));
    const sf::CombustionEvaluator eval(cfg.fitness_model_params(), cfg.fitness_grid(),
                                       cfg.front_tolerance);
    const sf::SpreadingResult result = sf::spreading_validation(
        eval, cfg.spread_center, cfg.spread_total, cfg.n_spreads, cfg.sweep.e_bar_grid);

    sf::write_text_file(artifact_path(cfg, "validate", ".csv"), sf::sweep_csv(result.sweep));

    nlohmann::ordered_json j;
    j["config"] = config_echo_json(cfg);
    j["bounded"] = result.bounded;
    j["worst_violation"] = result.worst_violation;
    j["distributions"] = result.distributions;
    j["summary"] = sf::sweep_summary_json(result.sweep);
    sf::write_text_file(artifact_path(cfg, "validate", ".summary.json"), j.dump(2) + "\n");

    std::cout << "bounded: " << (result.bounded ? "true" : "false") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form polydisperse spray flame model and iDSD optimizer"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* field = app.add_subcommand("field", "dump gamma/gamma_T/T grids and flame metrics");
    CLI::App* optimize = app.add_subcommand("optimize", "GA search for the optimal iDSD");
    CLI::App* sweep = app.add_subcommand("sweep", "monosectional and random polysectional sweeps");
    CLI::App* pe = app.add_subcommand("pe", "Peclet sensitivity of eta_max and t_max");
    CLI::App* validate = app.add_subcommand("validate", "spreading suite and monosectional bounding");
    for (CLI::App* cmd : {field, optimize, sweep, pe, validate})
        add_common(cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const sf::RunConfig cfg = resolve_config(flags);
        if (field->parsed())
            return cmd_field(cfg);
        if (optimize->parsed())
            return cmd_optimize(cfg);
        if (sweep->parsed())
            return cmd_sweep(cfg);
        if (pe->parsed())
            return cmd_pe(cfg);
        return cmd_validate(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
}
