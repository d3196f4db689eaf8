#include "sprayflame/model.hpp"

#include <cmath>
#include <tuple>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace sprayflame {

void validate(const TransportParams& p) {
    if (!(p.peclet > 0.0))
        throw std::invalid_argument("peclet must be positive");
    if (!(p.c > 0.0 && p.c < 1.0))
        throw std::invalid_argument("c must lie in (0,1)");
    if (!(p.v_ox >= 0.0))
        throw std::invalid_argument("v_ox must be non-negative");
}

void validate(const ThermalParams& p) {
    // lambda = 1 is the formal edge where the latent sink cancels the
    // vapor source exactly; it is accepted so the limit stays testable.
    if (!(p.lambda_latent >= 0.0 && p.lambda_latent <= 1.0))
        throw std::invalid_argument("lambda_latent must lie in [0,1]");
    if (!std::isfinite(p.t0))
        throw std::invalid_argument("t0 must be finite");
}

void validate(const SeriesTruncation& t) {
    if (t.n_modes < 1)
        throw std::invalid_argument("n_modes must be >= 1");
}

void validate(const ModelParams& p) {
    if (p.n_sections < 1)
        throw std::invalid_argument("n_sections must be >= 1");
    if (!(p.monomer_width > 0.0))
        throw std::invalid_argument("monomer_width must be positive");
    if (!(p.e_bar >= 0.0))
        throw std::invalid_argument("e_bar must be non-negative");
    if (!p.delta.empty() && static_cast<int>(p.delta.size()) != p.n_sections)
        throw std::invalid_argument("delta must have one entry per section");
    validate(TransportParams{p.transport});
    validate(ThermalParams{p.thermal});
    validate(SeriesTruncation{p.n_modes});
    if (!p.delta.empty())
        validate(InitialDistribution{p.delta});
}

std::pair<std::vector<double>, std::vector<double>>
heaviside_fourier(std::span<const double> amplitudes, double c, int n_modes) {
    if (!(c > 0.0 && c < 1.0))
        throw std::invalid_argument("c must lie in (0,1)");
    const int n_sec = static_cast<int>(amplitudes.size());
    std::vector<double> k0(n_sec), kn(static_cast<size_t>(n_modes) * n_sec);
    for (int i = 0; i < n_sec; ++i)
        k0[i] = 2.0 * c * amplitudes[i];
    for (int n = 1; n <= n_modes; ++n) {
        const double f = 2.0 * std::sin(n * std::numbers::pi * c) / (n * std::numbers::pi);
        double* row = kn.data() + static_cast<size_t>(n - 1) * n_sec;
        for (int i = 0; i < n_sec; ++i)
            row[i] = f * amplitudes[i];
    }
    return {std::move(k0), std::move(kn)};
}

std::pair<std::vector<double>, std::vector<double>>
particular_coefficients(std::span<const double> delta_coeff,
                        std::span<const double> k0, std::span<const double> kn,
                        double peclet) {
    const int n_sec = static_cast<int>(delta_coeff.size());
    const int n_modes = static_cast<int>(kn.size()) / std::max(1, n_sec);
    std::vector<double> b0(n_sec), bn(kn.size());
    for (int i = 0; i < n_sec; ++i) {
        const double d = delta_coeff[i];
        const double den = d + (d / peclet) * (d / peclet);
        b0[i] = (d == 0.0) ? 0.0 : -d * k0[i] / den;
    }
    for (int n = 1; n <= n_modes; ++n) {
        const double npi2 = (n * std::numbers::pi) * (n * std::numbers::pi);
        const double* krow = kn.data() + static_cast<size_t>(n - 1) * n_sec;
        double* brow = bn.data() + static_cast<size_t>(n - 1) * n_sec;
        for (int i = 0; i < n_sec; ++i) {
            const double d = delta_coeff[i];
            const double den = d + (d / peclet) * (d / peclet) - npi2;
            brow[i] = (d == 0.0) ? 0.0 : -d * krow[i] / den;
        }
    }
    return {std::move(b0), std::move(bn)};
}

std::pair<double, std::vector<double>>
homogeneous_coefficients(std::span<const double> b0, std::span<const double> bn,
                         std::span<const double> delta_coeff,
                         std::span<const double> q,
                         double peclet, double c,
                         double fuel_side_value, double ox_side_value) {
    const int n_sec = static_cast<int>(delta_coeff.size());
    const int n_modes = static_cast<int>(q.size());
    const double pe2 = peclet * peclet;

    // Fourier expansion of the eta=0 step.
    const double d0_half = c * fuel_side_value + (1.0 - c) * ox_side_value;

    double c20 = d0_half;
    for (int i = 0; i < n_sec; ++i)
        c20 -= 0.5 * b0[i] * (1.0 + delta_coeff[i] / pe2);

    std::vector<double> c2n(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double npi = n * std::numbers::pi;
        const double dn = 2.0 * (fuel_side_value - ox_side_value) * std::sin(npi * c) / npi;
        double acc = dn;
        const double* brow = bn.data() + static_cast<size_t>(n - 1) * n_sec;
        for (int i = 0; i < n_sec; ++i)
            acc -= brow[i] * (1.0 + delta_coeff[i] / pe2);
        c2n[n - 1] = acc / (1.0 - q[n - 1] / pe2);
    }
    return {c20, std::move(c2n)};
}

GasSeriesCoefficients gas_series(const SprayCoefficients& spray,
                                 const InitialDistribution& init,
                                 const TransportParams& transport, int n_modes) {
    GasSeriesCoefficients g;
    g.q = decay_exponents(transport.peclet, n_modes);
    const auto amplitudes = heaviside_partial_sums(spray);
    std::tie(g.k0, g.kn) = heaviside_fourier(amplitudes, transport.c, n_modes);
    std::tie(g.b0, g.bn) =
        particular_coefficients(spray.delta_coeff, g.k0, g.kn, transport.peclet);
    std::tie(g.c20, g.c2n) = homogeneous_coefficients(
        g.b0, g.bn, spray.delta_coeff, g.q, transport.peclet, transport.c,
        1.0 - init.total(), -transport.v_ox);
    return g;
}

TempSeriesCoefficients temperature_series(const SprayCoefficients& spray,
                                          const InitialDistribution& init,
                                          const ThermalParams& thermal,
                                          const TransportParams& transport,
                                          int n_modes) {
    validate(thermal);
    TempSeriesCoefficients t;
    const auto q = decay_exponents(transport.peclet, n_modes);
    auto amplitudes = heaviside_partial_sums(spray);
    for (double& s : amplitudes)
        s *= 1.0 - thermal.lambda_latent;
    std::tie(t.k0p, t.knp) = heaviside_fourier(amplitudes, transport.c, n_modes);
    std::tie(t.b0p, t.bnp) =
        particular_coefficients(spray.delta_coeff, t.k0p, t.knp, transport.peclet);
    std::tie(t.c20p, t.c2np) = homogeneous_coefficients(
        t.b0p, t.bnp, spray.delta_coeff, q, transport.peclet, transport.c,
        1.0 - init.total() + thermal.t0, thermal.t0);
    return t;
}

namespace {

// The particular ansatz degenerates when a spray decay coefficient solves
// the homogeneous characteristic equation, i.e. when
// Delta + (Delta/Pe)^2 == (n pi)^2 for a retained mode. Nudge the
// coefficient off the resonance; the induced error is below the series
// truncation level.
int enforce_mode_resonance_guard(std::vector<double>& delta_coeff, double peclet,
                                 int n_modes) {
    int nudges = 0;
    for (size_t i = 0; i < delta_coeff.size(); ++i) {
        bool again = true;
        while (again && nudges < 64) {
            again = false;
            const double d = delta_coeff[i];
            if (d == 0.0) break;
            const double lhs = d + (d / peclet) * (d / peclet);
            // resonance possible only for modes with (n pi)^2 near lhs
            const int n_near = static_cast<int>(std::sqrt(lhs) / std::numbers::pi + 0.5);
            for (int n = std::max(1, n_near - 1); n <= std::min(n_modes, n_near + 1); ++n) {
                const double npi2 = (n * std::numbers::pi) * (n * std::numbers::pi);
                if (std::abs(lhs - npi2) < kDecayDistinctTol * std::max(lhs, npi2)) {
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

CosineSeriesField to_field(double c20, std::vector<double> b0, std::vector<double> bn,
                           std::vector<double> c2n, std::vector<double> q,
                           std::vector<double> decay) {
    CosineSeriesField f;
    f.c20 = c20;
    f.b0 = std::move(b0);
    f.bn = std::move(bn);
    f.c2n = std::move(c2n);
    f.q = std::move(q);
    f.decay = std::move(decay);
    return f;
}

} // namespace

FlameModel FlameModel::assemble(const ModelParams& params) {
    validate(params);
    FlameModel m;
    m.params_ = params;
    if (m.params_.delta.empty())
        m.params_.delta.assign(params.n_sections, 0.0);

    const SectionGrid grid = build_section_grid(params.n_sections, params.monomer_width);
    const InitialDistribution init{m.params_.delta};

    auto [delta_coeff, psi_coeff] = evaporation_coefficients(grid, params.e_bar);
    int nudges = enforce_distinct_decay(delta_coeff);
    nudges += enforce_mode_resonance_guard(delta_coeff, params.transport.peclet,
                                           params.n_modes);
    nudges += enforce_distinct_decay(delta_coeff);
    if (nudges > 0)
        std::cerr << "sprayflame: applied " << nudges
                  << " resonance nudge(s) to decay coefficients\n";
    m.resonance_nudges_ = nudges;

    m.spray_.delta_coeff = std::move(delta_coeff);
    m.spray_.psi_coeff = std::move(psi_coeff);
    m.spray_.e_bar = params.e_bar;
    if (params.e_bar == 0.0) {
        const int n = params.n_sections;
        m.spray_.omega.assign(static_cast<size_t>(n) * n, 0.0);
        for (int j = 0; j < n; ++j)
            m.spray_.omega[static_cast<size_t>(j) * n + j] = init.delta[j];
    } else {
        m.spray_.omega = influence_matrix(m.spray_.delta_coeff, m.spray_.psi_coeff, init);
    }
    m.source_amplitudes_ = heaviside_partial_sums(m.spray_);

    m.gas_coeffs_ = gas_series(m.spray_, init, params.transport, params.n_modes);
    m.temp_coeffs_ = temperature_series(m.spray_, init, params.thermal,
                                        params.transport, params.n_modes);

    m.gas_ = to_field(m.gas_coeffs_.c20, m.gas_coeffs_.b0, m.gas_coeffs_.bn,
                      m.gas_coeffs_.c2n, m.gas_coeffs_.q, m.spray_.delta_coeff);
    m.temp_ = to_field(m.temp_coeffs_.c20p, m.temp_coeffs_.b0p, m.temp_coeffs_.bnp,
                       m.temp_coeffs_.c2np, m.gas_coeffs_.q, m.spray_.delta_coeff);
    return m;
}

double FlameModel::temperature(double xi, double eta) const {
    const double g = gamma(xi, eta);
    return gamma_t(xi, eta) - std::max(g, 0.0);
}

double FlameModel::vapor_source(double xi, double eta) const {
    if (xi > params_.transport.c)
        return 0.0;
    double s = 0.0;
    for (int i = 0; i < spray_.n_sections(); ++i)
        s += spray_.delta_coeff[i] * source_amplitudes_[i] *
             std::exp(-spray_.delta_coeff[i] * eta);
    return s;
}

} // namespace sprayflame
