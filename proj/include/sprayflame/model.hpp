#ifndef SPRAYFLAME_MODEL_HPP
#define SPRAYFLAME_MODEL_HPP

#include <span>
#include <utility>
#include <vector>

#include "sprayflame/sections.hpp"
#include "sprayflame/series.hpp"
#include "sprayflame/spray.hpp"

namespace sprayflame {

/// Dimensionless transport group of the channel flow.
/// c is the normalized half inner channel width, v_ox the normalized
/// oxidizer supply. Defaults are the calibrated values that put the pure
/// gaseous flame at height ~0.166 and tip temperature v/(1+v) ~ 0.2308.
struct TransportParams {
    double peclet = 10.0;
    double c = 0.165;
    double v_ox = 0.30;
};
void validate(const TransportParams& p);

/// Latent-heat fraction and normalized injection temperature. The Lewis
/// number is identically 1 in this model and carries no field.
struct ThermalParams {
    double lambda_latent = 0.0;
    double t0 = 0.0;
};
void validate(const ThermalParams& p);

struct SeriesTruncation {
    int n_modes = 200;
};
void validate(const SeriesTruncation& t);

/// Cosine-series coefficients of the mass-fraction field.
struct GasSeriesCoefficients {
    std::vector<double> q;    ///< mode decay exponents
    std::vector<double> k0;   ///< constant Fourier terms of the source profiles
    std::vector<double> kn;   ///< flat [mode][section]
    std::vector<double> b0;   ///< particular amplitudes, constant mode
    std::vector<double> bn;   ///< flat [mode][section]
    double c20 = 0.0;         ///< homogeneous constant
    std::vector<double> c2n;  ///< homogeneous mode amplitudes
};

/// Primed analogues for the temperature coupling field.
struct TempSeriesCoefficients {
    std::vector<double> k0p, knp, b0p, bnp;
    double c20p = 0.0;
    std::vector<double> c2np;
};

/// Cosine coefficients of S * indicator(xi <= c) on [0,1]:
///   k0 = 2 c S,   kn = 2 S sin(n pi c) / (n pi).
std::pair<std::vector<double>, std::vector<double>>
heaviside_fourier(std::span<const double> amplitudes, double c, int n_modes);

/// Particular-solution amplitudes:
///   b0_i = -Delta_i k0_i / (Delta_i + (Delta_i/Pe)^2)
///   bn_i = -Delta_i kn_i / (Delta_i + (Delta_i/Pe)^2 - (n pi)^2)
/// The caller must have run the mode-resonance guard on delta_coeff.
std::pair<std::vector<double>, std::vector<double>>
particular_coefficients(std::span<const double> delta_coeff,
                        std::span<const double> k0, std::span<const double> kn,
                        double peclet);

/// Matches the eta=0 mixed boundary functional against the injection step
/// taking `fuel_side_value` on [0,c] and `ox_side_value` on (c,1]; returns
/// (c20, c2n). The gas field passes (1 - sum delta, -v_ox), the
/// temperature field (1 - sum delta + t0, t0).
std::pair<double, std::vector<double>>
homogeneous_coefficients(std::span<const double> b0, std::span<const double> bn,
                         std::span<const double> delta_coeff,
                         std::span<const double> q,
                         double peclet, double c,
                         double fuel_side_value, double ox_side_value);

GasSeriesCoefficients gas_series(const SprayCoefficients& spray,
                                 const InitialDistribution& init,
                                 const TransportParams& transport, int n_modes);

TempSeriesCoefficients temperature_series(const SprayCoefficients& spray,
                                          const InitialDistribution& init,
                                          const ThermalParams& thermal,
                                          const TransportParams& transport,
                                          int n_modes);

/// Everything needed to assemble a model run.
struct ModelParams {
    int n_sections = 9;
    double monomer_width = 1.0;
    double e_bar = 100.0;
    std::vector<double> delta;  ///< size n_sections; empty means all zero
    TransportParams transport;
    ThermalParams thermal;
    int n_modes = 200;
};
void validate(const ModelParams& p);

/// Assembled closed-form solution. Coefficients are computed once; point
/// evaluation is a pure function, safe to call concurrently.
class FlameModel {
public:
    static FlameModel assemble(const ModelParams& params);

    double gamma(double xi, double eta) const { return gas_.value(xi, eta); }
    double gamma_t(double xi, double eta) const { return temp_.value(xi, eta); }

    /// T = gamma_T - gamma on the fuel side (gamma > 0), gamma_T on the
    /// oxidizer side.
    double temperature(double xi, double eta) const;

    /// Spray vapor release rate, zero outside the inner channel.
    double vapor_source(double xi, double eta) const;

    std::vector<double> liquid_fractions(double eta) const { return liquid_mass_fractions(spray_, eta); }

    const CosineSeriesField& gas_field() const { return gas_; }
    const CosineSeriesField& temperature_field() const { return temp_; }
    const SprayCoefficients& spray() const { return spray_; }
    const GasSeriesCoefficients& gas_coefficients() const { return gas_coeffs_; }
    const TempSeriesCoefficients& temp_coefficients() const { return temp_coeffs_; }
    const ModelParams& params() const { return params_; }
    const std::vector<double>& source_amplitudes() const { return source_amplitudes_; }
    int resonance_nudges() const { return resonance_nudges_; }

private:
    ModelParams params_;
    SprayCoefficients spray_;
    GasSeriesCoefficients gas_coeffs_;
    TempSeriesCoefficients temp_coeffs_;
    CosineSeriesField gas_;
    CosineSeriesField temp_;
    std::vector<double> source_amplitudes_;  ///< S_i row sums
    int resonance_nudges_ = 0;
};

} // namespace sprayflame

#endif
