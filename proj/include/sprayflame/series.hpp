#ifndef SPRAYFLAME_SERIES_HPP
#define SPRAYFLAME_SERIES_HPP

#include <span>
#include <vector>

namespace sprayflame {

/// Axial decay exponents of the homogeneous cosine modes,
///   q_n = (Pe^2/2) [1 - sqrt(1 + 4 (n pi)^2 / Pe^2)],  n = 1..n_modes.
/// All negative, strictly decreasing.
std::vector<double> decay_exponents(double peclet, int n_modes);

/// A truncated solution of the convection-diffusion field in the strip
/// xi in [0,1], eta >= 0:
///
///   f(xi,eta) = c20 + (1/2) sum_i b0[i] exp(-decay[i] eta)
///             + sum_n [ c2n[n] exp(q[n] eta)
///                       + sum_i bn[n*N+i] exp(-decay[i] eta) ] cos(n pi xi)
///
/// Both the mass-fraction field and the temperature coupling field take
/// this shape; they differ only in coefficients. Immutable after assembly,
/// safe for concurrent evaluation.
struct CosineSeriesField {
    double c20 = 0.0;
    std::vector<double> b0;     ///< size N
    std::vector<double> bn;     ///< flat [mode][section], size n_modes*N
    std::vector<double> c2n;    ///< size n_modes
    std::vector<double> q;      ///< size n_modes
    std::vector<double> decay;  ///< size N (shared spray decay coefficients)

    int n_sections() const { return static_cast<int>(b0.size()); }
    int n_modes() const { return static_cast<int>(c2n.size()); }

    /// Point evaluation; O(N * n_modes).
    double value(double xi, double eta) const;

    /// Analytic d/deta at a point (series differentiated term by term).
    double eta_derivative(double xi, double eta) const;

    /// Fills amplitudes[n] = c2n[n] e^{q_n eta} + sum_i bn[n][i] e^{-decay_i eta}
    /// and returns the xi-independent part c20 + (1/2) sum_i b0[i] e^{-decay_i eta}.
    /// Shared by the row-at-a-time grid kernels.
    double cosine_amplitudes(double eta, std::span<double> amplitudes) const;
};

} // namespace sprayflame

#endif
