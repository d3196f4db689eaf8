#include "sprayflame/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "sprayflame/artifacts.hpp"

namespace sprayflame {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& s) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& s) {
    try {
        size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size())
            throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(trim(item)));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<int>(parse_int(trim(item))));
    return out;
}

std::vector<double> parse_grid(const std::string& s) {
    if (s.rfind("log:", 0) == 0) {
        std::stringstream ss(s.substr(4));
        std::string lo, hi, n;
        if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, n))
            throw std::invalid_argument("grid syntax is log:<lo>:<hi>:<n>");
        return SweepSpec::log_grid(parse_double(trim(lo)), parse_double(trim(hi)),
                                   static_cast<int>(parse_int(trim(n))));
    }
    return parse_double_list(s);
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.n_sections = n_sections;
    p.monomer_width = monomer_width;
    p.e_bar = e_bar;
    p.delta = delta;
    p.transport = transport;
    p.thermal = thermal;
    p.n_modes = n_modes;
    return p;
}

ModelParams RunConfig::fitness_model_params() const {
    ModelParams p = model_params();
    p.n_modes = fitness_n_modes;
    return p;
}

FieldGrid RunConfig::production_grid() const {
    return FieldGrid::uniform(xi_points, eta_points, eta_top);
}

FieldGrid RunConfig::fitness_grid() const {
    return FieldGrid::uniform(fitness_xi_points, fitness_eta_points, eta_top);
}

FitnessKind RunConfig::fitness_kind() const {
    if (fitness == "eta_max")
        return FitnessKind::eta_max;
    if (fitness == "t_max")
        return FitnessKind::t_max;
    throw std::invalid_argument("ga.fitness must be eta_max or t_max");
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    using Setter = std::function<void(RunConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"model.n_sections", [](RunConfig& c, const std::string& v) { c.n_sections = (int)parse_int(v); }},
        {"model.monomer_width", [](RunConfig& c, const std::string& v) { c.monomer_width = parse_double(v); }},
        {"model.e_bar", [](RunConfig& c, const std::string& v) { c.e_bar = parse_double(v); }},
        {"model.delta", [](RunConfig& c, const std::string& v) { c.delta = parse_double_list(v); }},
        {"model.peclet", [](RunConfig& c, const std::string& v) { c.transport.peclet = parse_double(v); }},
        {"model.c", [](RunConfig& c, const std::string& v) { c.transport.c = parse_double(v); }},
        {"model.v_ox", [](RunConfig& c, const std::string& v) { c.transport.v_ox = parse_double(v); }},
        {"model.lambda_latent", [](RunConfig& c, const std::string& v) { c.thermal.lambda_latent = parse_double(v); }},
        {"model.t0", [](RunConfig& c, const std::string& v) { c.thermal.t0 = parse_double(v); }},
        {"numerics.n_modes", [](RunConfig& c, const std::string& v) { c.n_modes = (int)parse_int(v); }},
        {"numerics.xi_points", [](RunConfig& c, const std::string& v) { c.xi_points = (int)parse_int(v); }},
        {"numerics.eta_points", [](RunConfig& c, const std::string& v) { c.eta_points = (int)parse_int(v); }},
        {"numerics.eta_top", [](RunConfig& c, const std::string& v) { c.eta_top = parse_double(v); }},
        {"numerics.front_tolerance", [](RunConfig& c, const std::string& v) { c.front_tolerance = parse_double(v); }},
        {"numerics.fitness_xi_points", [](RunConfig& c, const std::string& v) { c.fitness_xi_points = (int)parse_int(v); }},
        {"numerics.fitness_eta_points", [](RunConfig& c, const std::string& v) { c.fitness_eta_points = (int)parse_int(v); }},
        {"numerics.fitness_n_modes", [](RunConfig& c, const std::string& v) { c.fitness_n_modes = (int)parse_int(v); }},
        {"ga.population_size", [](RunConfig& c, const std::string& v) { c.ga.population_size = (int)parse_int(v); }},
        {"ga.max_generations", [](RunConfig& c, const std::string& v) { c.ga.max_generations = (int)parse_int(v); }},
        {"ga.termination_cost_delta", [](RunConfig& c, const std::string& v) { c.ga.termination_cost_delta = parse_double(v); }},
        {"ga.mutation_rate", [](RunConfig& c, const std::string& v) { c.ga.mutation_rate = parse_double(v); }},
        {"ga.elite_parents", [](RunConfig& c, const std::string& v) { c.ga.elite_parents = (int)parse_int(v); }},
        {"ga.rng_seed", [](RunConfig& c, const std::string& v) { c.ga.rng_seed = (std::uint64_t)parse_int(v); }},
        {"ga.delta_cap", [](RunConfig& c, const std::string& v) { c.ga.delta_cap = parse_double(v); }},
        {"ga.k_dof", [](RunConfig& c, const std::string& v) { c.k_dof = (int)parse_int(v); }},
        {"ga.fitness", [](RunConfig& c, const std::string& v) { c.fitness = v; }},
        {"experiment.e_bar_grid", [](RunConfig& c, const std::string& v) { c.sweep.e_bar_grid = parse_grid(v); }},
        {"experiment.d_list", [](RunConfig& c, const std::string& v) { c.sweep.d_list = parse_int_list(v); }},
        {"experiment.delta_list", [](RunConfig& c, const std::string& v) { c.sweep.delta_list = parse_double_list(v); }},
        {"experiment.pe_list", [](RunConfig& c, const std::string& v) { c.sweep.pe_list = parse_double_list(v); }},
        {"experiment.dof_list", [](RunConfig& c, const std::string& v) { c.sweep.dof_list = parse_int_list(v); }},
        {"experiment.rng_seed", [](RunConfig& c, const std::string& v) { c.sweep.rng_seed = (std::uint64_t)parse_int(v); }},
        {"experiment.n_random", [](RunConfig& c, const std::string& v) { c.n_random = (int)parse_int(v); }},
        {"experiment.spread_center", [](RunConfig& c, const std::string& v) { c.spread_center = (int)parse_int(v); }},
        {"experiment.spread_total", [](RunConfig& c, const std::string& v) { c.spread_total = parse_double(v); }},
        {"experiment.n_spreads", [](RunConfig& c, const std::string& v) { c.n_spreads = (int)parse_int(v); }},
        {"output.dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
        {"threads", [](RunConfig& c, const std::string& v) { c.threads = (int)parse_int(v); }},
    };
    const auto it = setters.find(key);
    if (it == setters.end())
        throw std::invalid_argument("unknown config key: '" + key + "'");
    it->second(cfg, value);
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.sweep.e_bar_grid = SweepSpec::log_grid(1.0, 1e6, 40);
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const RunConfig& cfg) {
    validate(cfg.model_params());
    validate(cfg.fitness_model_params());
    (void)cfg.production_grid();
    (void)cfg.fitness_grid();
    validate(cfg.ga);
    (void)cfg.fitness_kind();
    validate(cfg.sweep);
    if (cfg.k_dof < 1 || cfg.k_dof > cfg.n_sections)
        throw std::invalid_argument("ga.k_dof must lie in [1, n_sections]");
    if (cfg.threads < 0)
        throw std::invalid_argument("threads must be >= 0");
}

std::string RunConfig::echo() const {
    std::string out;
    auto put = [&](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    };
    put("model.n_sections", std::to_string(n_sections));
    put("model.monomer_width", format_double(monomer_width));
    put("model.e_bar", format_double(e_bar));
    put("model.delta", delta.empty() ? join(std::vector<double>(n_sections, 0.0)) : join(delta));
    put("model.peclet", format_double(transport.peclet));
    put("model.c", format_double(transport.c));
    put("model.v_ox", format_double(transport.v_ox));
    put("model.lambda_latent", format_double(thermal.lambda_latent));
    put("model.t0", format_double(thermal.t0));
    put("numerics.n_modes", std::to_string(n_modes));
    put("numerics.xi_points", std::to_string(xi_points));
    put("numerics.eta_points", std::to_string(eta_points));
    put("numerics.eta_top", format_double(eta_top));
    put("numerics.front_tolerance", format_double(front_tolerance));
    put("numerics.fitness_xi_points", std::to_string(fitness_xi_points));
    put("numerics.fitness_eta_points", std::to_string(fitness_eta_points));
    put("numerics.fitness_n_modes", std::to_string(fitness_n_modes));
    put("ga.population_size", std::to_string(ga.population_size));
    put("ga.max_generations", std::to_string(ga.max_generations));
    put("ga.termination_cost_delta", format_double(ga.termination_cost_delta));
    put("ga.mutation_rate", format_double(ga.mutation_rate));
    put("ga.elite_parents", std::to_string(ga.elite_parents));
    put("ga.rng_seed", std::to_string(ga.rng_seed));
    put("ga.delta_cap", format_double(ga.delta_cap));
    put("ga.k_dof", std::to_string(k_dof));
    put("ga.fitness", fitness);
    put("experiment.e_bar_grid", join(sweep.e_bar_grid));
    put("experiment.d_list", join(sweep.d_list));
    put("experiment.delta_list", join(sweep.delta_list));
    put("experiment.pe_list", join(sweep.pe_list));
    put("experiment.dof_list", join(sweep.dof_list));
    put("experiment.rng_seed", std::to_string(sweep.rng_seed));
    put("experiment.n_random", std::to_string(n_random));
    put("experiment.spread_center", std::to_string(spread_center));
    put("experiment.spread_total", format_double(spread_total));
    put("experiment.n_spreads", std::to_string(n_spreads));
    // output.dir and threads are delivery knobs: they change neither the
    // computation nor the artifact bytes, so they stay out of the echo
    // and the hash
    return out;
}

std::string RunConfig::hash() const {
    const std::string text = echo();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i)
        buf[15 - i] = hex[(h >> (4 * i)) & 0xF];
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace sprayflame
