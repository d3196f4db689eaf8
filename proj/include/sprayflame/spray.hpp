#ifndef SPRAYFLAME_SPRAY_HPP
#define SPRAYFLAME_SPRAY_HPP

#include <span>
#include <utility>
#include <vector>

#include "sprayflame/sections.hpp"

namespace sprayflame {

/// Dimensionless sectional evaporation coefficients and the influence
/// matrix of the closed-form spray solution
///   gamma_d_j(eta) = sum_{i>=j} omega(i,j) * exp(-delta_coeff[i] * eta).
struct SprayCoefficients {
    std::vector<double> delta_coeff;  ///< per-section decay, size N
    std::vector<double> psi_coeff;    ///< inter-section transfer, size N-1
    std::vector<double> omega;        ///< N x N row-major; nonzero for i >= j
    double e_bar = 0.0;

    int n_sections() const { return static_cast<int>(delta_coeff.size()); }
    double omega_at(int i, int j) const { return omega[static_cast<size_t>(i) * delta_coeff.size() + j]; }
};

/// Evaporation decay and transfer coefficients for a sectioned spray under
/// the d^2 evaporation law:
///   delta_i = (3 E/2) (3 d_H - 2 d_L) / (d_H^3 - d_L^3)
///   psi_i   = (3 E/2) d_L,i+1 / (d_H,i+1^3 - d_L,i+1^3)
/// Degenerate sections (d_high == d_low) are rejected.
std::pair<std::vector<double>, std::vector<double>>
evaporation_coefficients(const SectionGrid& grid, double e_bar);

/// Back-substitution for the influence coefficients:
///   omega(N,N) = delta_N
///   omega(i,j) = psi_j / (delta_j - delta_i) * omega(i,j+1)   (i > j)
///   omega(j,j) = delta_j - sum_{i>j} omega(i,j)
/// Near-equal decay coefficients make the recursion singular; when
/// `allow_perturbation` the offending coefficient is nudged by a relative
/// 1e-9 (callers see the adjusted values via make_spray_coefficients),
/// otherwise a std::runtime_error is thrown.
std::vector<double> influence_matrix(std::span<const double> delta_coeff,
                                     std::span<const double> psi_coeff,
                                     const InitialDistribution& init);

/// Bundles the two steps above, applying the distinctness guard first.
SprayCoefficients make_spray_coefficients(const SectionGrid& grid, double e_bar,
                                          const InitialDistribution& init,
                                          bool allow_perturbation = true);

/// Relative guard below which two decay coefficients count as resonant.
inline constexpr double kDecayDistinctTol = 1e-9;

/// Perturbs near-equal entries of `delta_coeff` multiplicatively by
/// (1 + 1e-9) until all pairs are distinct. Returns the number of nudges.
int enforce_distinct_decay(std::vector<double>& delta_coeff);

/// gamma_d_j(eta) for every section.
std::vector<double> liquid_mass_fractions(const SprayCoefficients& coeffs, double eta);

/// Total liquid fraction sum_j gamma_d_j(eta).
double total_liquid(const SprayCoefficients& coeffs, double eta);

/// Row partial sums S_i = sum_{j<=i} omega(i,j): the amplitude of the
/// spray vapor source's indicator profile in the i-th decay channel.
std::vector<double> heaviside_partial_sums(const SprayCoefficients& coeffs);

} // namespace sprayflame

#endif
