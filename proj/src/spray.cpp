#include "sprayflame/spray.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sprayflame {

std::pair<std::vector<double>, std::vector<double>>
evaporation_coefficients(const SectionGrid& grid, double e_bar) {
    validate(grid);
    if (!(e_bar >= 0.0))
        throw std::invalid_argument("e_bar must be non-negative");
    const int n = grid.n_sections();
    std::vector<double> delta_coeff(n), psi_coeff(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) {
        const double dl = grid.d_low[i], dh = grid.d_high[i];
        const double vol = dh * dh * dh - dl * dl * dl;
        if (!(vol > 0.0))
            throw std::invalid_argument("degenerate section (zero diameter width)");
        delta_coeff[i] = 1.5 * e_bar * (3.0 * dh - 2.0 * dl) / vol;
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double dl = grid.d_low[i + 1], dh = grid.d_high[i + 1];
        const double vol = dh * dh * dh - dl * dl * dl;
        psi_coeff[i] = 1.5 * e_bar * dl / vol;
    }
    return {std::move(delta_coeff), std::move(psi_coeff)};
}

int enforce_distinct_decay(std::vector<double>& delta_coeff) {
    const int n = static_cast<int>(delta_coeff.size());
    int nudges = 0;
    bool again = true;
    while (again && nudges < 64) {
        again = false;
        for (int i = 0; i < n && !again; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double scale = std::max(std::abs(delta_coeff[i]), std::abs(delta_coeff[j]));
                if (std::abs(delta_coeff[i] - delta_coeff[j]) < kDecayDistinctTol * scale) {
                    delta_coeff[i] *= 1.0 + kDecayDistinctTol;
                    ++nudges;
                    again = true;
                    break;
                }
            }
        }
    }
    return nudges;
}

std::vector<double> influence_matrix(std::span<const double> delta_coeff,
                                     std::span<const double> psi_coeff,
                                     const InitialDistribution& init) {
    const int n = static_cast<int>(delta_coeff.size());
    if (init.n_sections() != n)
        throw std::invalid_argument("distribution size does not match section count");
    if (static_cast<int>(psi_coeff.size()) != std::max(0, n - 1))
        throw std::invalid_argument("psi_coeff size must be N-1");
    validate(init);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double scale = std::max(std::abs(delta_coeff[i]), std::abs(delta_coeff[j]));
            if (std::abs(delta_coeff[i] - delta_coeff[j]) < kDecayDistinctTol * scale)
                throw std::runtime_error("resonant decay coefficients; enable perturbation");
        }

    std::vector<double> omega(static_cast<size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return omega[static_cast<size_t>(i) * n + j]; };
    for (int j = n - 1; j >= 0; --j) {
        double below = 0.0;
        for (int i = j + 1; i < n; ++i) {
            at(i, j) = psi_coeff[j] / (delta_coeff[j] - delta_coeff[i]) * at(i, j + 1);
            below += at(i, j);
        }
        at(j, j) = init.delta[j] - below;
    }
    return omega;
}

SprayCoefficients make_spray_coefficients(const SectionGrid& grid, double e_bar,
                                          const InitialDistribution& init,
                                          bool allow_perturbation) {
    SprayCoefficients c;
    auto [delta_coeff, psi_coeff] = evaporation_coefficients(grid, e_bar);
    if (allow_perturbation && e_bar > 0.0) {
        const int nudges = enforce_distinct_decay(delta_coeff);
        if (nudges > 0)
            std::cerr << "sprayflame: nudged " << nudges
                      << " near-equal decay coefficient(s) by relative 1e-9\n";
    }
    c.delta_coeff = std::move(delta_coeff);
    c.psi_coeff = std::move(psi_coeff);
    c.e_bar = e_bar;
    if (e_bar == 0.0) {
        // no evaporation: gamma_d stays at the injected fractions
        const int n = grid.n_sections();
        c.omega.assign(static_cast<size_t>(n) * n, 0.0);
        for (int j = 0; j < n; ++j)
            c.omega[static_cast<size_t>(j) * n + j] = init.delta[j];
    } else {
        c.omega = influence_matrix(c.delta_coeff, c.psi_coeff, init);
    }
    return c;
}

std::vector<double> liquid_mass_fractions(const SprayCoefficients& coeffs, double eta) {
    if (!(eta >= 0.0))
        throw std::invalid_argument("eta must be non-negative");
    const int n = coeffs.n_sections();
    std::vector<double> decayed(n);
    for (int i = 0; i < n; ++i)
        decayed[i] = std::exp(-coeffs.delta_coeff[i] * eta);
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = j; i < n; ++i)
            acc += coeffs.omega_at(i, j) * decayed[i];
        out[j] = acc;
    }
    return out;
}

double total_liquid(const SprayCoefficients& coeffs, double eta) {
    const auto g = liquid_mass_fractions(coeffs, eta);
    double sum = 0.0;
    for (double v : g) sum += v;
    return sum;
}

std::vector<double> heaviside_partial_sums(const SprayCoefficients& coeffs) {
    const int n = coeffs.n_sections();
    std::vector<double> s(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j)
            acc += coeffs.omega_at(i, j);
        s[i] = acc;
    }
    return s;
}

} // namespace sprayflame
