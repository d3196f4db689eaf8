#ifndef SPRAYFLAME_CONFIG_HPP
#define SPRAYFLAME_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "sprayflame/experiments.hpp"
#include "sprayflame/ga.hpp"
#include "sprayflame/model.hpp"

namespace sprayflame {

/// One structured key-value file per run; command-line flags override file
/// values. All fields carry working defaults so an empty config is valid.
struct RunConfig {
    // model
    int n_sections = 9;
    double monomer_width = 1.0;
    double e_bar = 100.0;
    std::vector<double> delta;  ///< empty = all zero (gaseous baseline)
    TransportParams transport;
    ThermalParams thermal;

    // numerics
    int n_modes = 200;
    int xi_points = 401;
    int eta_points = 801;
    double eta_top = 0.6;
    double front_tolerance = 1e-3;
    int fitness_xi_points = 161;
    int fitness_eta_points = 321;
    int fitness_n_modes = 128;

    // ga
    GAConfig ga;
    int k_dof = 3;
    std::string fitness = "eta_max";

    // experiment
    SweepSpec sweep;
    int n_random = 9;
    int spread_center = 5;
    double spread_total = 0.7;
    int n_spreads = 7;

    // output
    std::string out_dir = "out";
    int threads = 0;  ///< 0 = runtime default

    ModelParams model_params() const;
    ModelParams fitness_model_params() const;
    FieldGrid production_grid() const;
    FieldGrid fitness_grid() const;
    FitnessKind fitness_kind() const;

    /// Canonical "key = value" listing of every field with defaults
    /// applied; identical configs produce identical echoes.
    std::string echo() const;

    /// FNV-1a hash of the echo, 16 hex digits.
    std::string hash() const;
};

/// Parses "key = value" lines ('#' starts a comment). Unknown keys are
/// rejected. Lists are comma-separated; e_bar grids also accept
/// "log:<lo>:<hi>:<n>".
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Applies a single override in "key=value" form.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Validates every block against its module invariants; throws on the
/// first violation.
void validate(const RunConfig& cfg);

} // namespace sprayflame

#endif
