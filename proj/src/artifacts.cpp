#include "sprayflame/artifacts.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sprayflame {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string field_csv(const FieldGrid& grid, const std::vector<double>& gamma_vals,
                      const std::vector<double>& gamma_t_vals) {
    const int nx = grid.n_xi();
    const int ny = grid.n_eta();
    if (gamma_vals.size() != static_cast<size_t>(nx) * ny ||
        gamma_t_vals.size() != gamma_vals.size())
        throw std::invalid_argument("field size does not match grid");
    std::string out = "xi,eta,gamma,gamma_T,T\n";
    out.reserve(gamma_vals.size() * 48);
    for (int j = 0; j < nx; ++j) {
        for (int r = 0; r < ny; ++r) {
            const size_t idx = static_cast<size_t>(r) * nx + j;
            const double g = gamma_vals[idx];
            const double gt = gamma_t_vals[idx];
            const double t = gt - std::max(g, 0.0);
            out += format_double(grid.xi[j]);
            out += ',';
            out += format_double(grid.eta[r]);
            out += ',';
            out += format_double(g);
            out += ',';
            out += format_double(gt);
            out += ',';
            out += format_double(t);
            out += '\n';
        }
    }
    return out;
}

nlohmann::ordered_json metrics_json(const std::optional<FlameMetrics>& metrics) {
    nlohmann::ordered_json j;
    if (!metrics) {
        j["flame"] = false;
        return j;
    }
    j["flame"] = true;
    j["eta_max"] = metrics->eta_max;
    j["t_max"] = metrics->t_max;
    nlohmann::ordered_json front = nlohmann::ordered_json::array();
    for (const FrontPoint& p : metrics->front)
        front.push_back({p.xi, p.eta});
    j["front"] = std::move(front);
    return j;
}

nlohmann::ordered_json ga_result_json(const GAResult& result, double delta_cap) {
    nlohmann::ordered_json j;
    j["best_score"] = result.best_score;
    j["best"]["sections"] = result.best.sections;
    j["best"]["fractions"] = result.best.fractions;
    j["best"]["encoding_bits"] = encode(result.best, delta_cap);
    j["generations"] = result.generations;
    j["evaluations"] = result.evaluations;
    j["cache_hits"] = result.cache_hits;
    j["failed_evaluations"] = result.failed_evaluations;
    nlohmann::ordered_json history = nlohmann::ordered_json::array();
    for (const GenerationStats& g : result.history)
        history.push_back({{"best", g.best}, {"mean", g.mean}, {"worst", g.worst}});
    j["history"] = std::move(history);
    return j;
}

nlohmann::ordered_json sweep_summary_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["gaseous_eta_max"] = result.gaseous_eta;
    j["gaseous_t_max"] = result.gaseous_t;
    j["asymptote_gap"] = result.asymptote_gap;
    j["reversal_points"] = result.reversal_points;
    int failures = 0;
    for (const SweepRow& row : result.rows)
        if (!row.ok)
            ++failures;
    j["rows"] = result.rows.size();
    j["failed_rows"] = failures;
    return j;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "curve,e_bar,peclet,eta_max,t_max,flag\n";
    for (const SweepRow& row : result.rows) {
        out += row.curve;
        out += ',';
        out += format_double(row.e_bar);
        out += ',';
        out += format_double(row.peclet);
        out += ',';
        out += row.ok ? format_double(row.eta_max) : "";
        out += ',';
        out += row.ok ? format_double(row.t_max) : "";
        out += ',';
        out += row.ok ? "ok" : "no_flame";
        out += '\n';
    }
    return out;
}

std::string dof_ladder_csv(const DofLadderResult& result) {
    std::string out = "dof,e_bar,best_score,eta_max,t_max,dominant_share,generations,sections,fractions,flag\n";
    for (const DofLadderRow& row : result.rows) {
        out += std::to_string(row.dof);
        out += ',';
        out += format_double(row.e_bar);
        out += ',';
        out += format_double(row.best_score);
        out += ',';
        out += format_double(row.eta_max);
        out += ',';
        out += format_double(row.t_max);
        out += ',';
        out += format_double(row.dominant_share);
        out += ',';
        out += std::to_string(row.generations);
        out += ',';
        for (size_t i = 0; i < row.best.sections.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(row.best.sections[i]);
        }
        out += ',';
        for (size_t i = 0; i < row.best.fractions.size(); ++i) {
            if (i) out += ';';
            out += format_double(row.best.fractions[i]);
        }
        out += ',';
        out += row.ok ? "ok" : "failed";
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace sprayflame
