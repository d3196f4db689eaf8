#ifndef SPRAYFLAME_ARTIFACTS_HPP
#define SPRAYFLAME_ARTIFACTS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sprayflame/experiments.hpp"
#include "sprayflame/front.hpp"

namespace sprayflame {

/// Shortest round-trip decimal form of a double; deterministic.
std::string format_double(double v);

/// Grid dump with header xi,eta,gamma,gamma_T,T; rows run xi-major
/// (all eta for the first xi, then the next xi).
std::string field_csv(const FieldGrid& grid, const std::vector<double>& gamma_vals,
                      const std::vector<double>& gamma_t_vals);

nlohmann::ordered_json metrics_json(const std::optional<FlameMetrics>& metrics);
nlohmann::ordered_json ga_result_json(const GAResult& result, double delta_cap);
nlohmann::ordered_json sweep_summary_json(const SweepResult& result);

std::string sweep_csv(const SweepResult& result);
std::string dof_ladder_csv(const DofLadderResult& result);

void write_text_file(const std::string& path, const std::string& content);

} // namespace sprayflame

#endif
