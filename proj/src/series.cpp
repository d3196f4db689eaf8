#include "sprayflame/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sprayflame {

std::vector<double> decay_exponents(double peclet, int n_modes) {
    if (!(peclet > 0.0))
        throw std::invalid_argument("peclet must be positive");
    if (n_modes < 1)
        throw std::invalid_argument("n_modes must be >= 1");
    std::vector<double> q(n_modes);
    const double pe2 = peclet * peclet;
    for (int n = 1; n <= n_modes; ++n) {
        const double npi = n * std::numbers::pi;
        q[n - 1] = 0.5 * pe2 * (1.0 - std::sqrt(1.0 + 4.0 * npi * npi / pe2));
    }
    return q;
}

double CosineSeriesField::value(double xi, double eta) const {
    const int n_sec = n_sections();
    const int modes = n_modes();
    double spray_decay[64];
    double* ed = spray_decay;
    std::vector<double> heap;
    if (n_sec > 64) {
        heap.resize(n_sec);
        ed = heap.data();
    }
    double out = c20;
    for (int i = 0; i < n_sec; ++i) {
        ed[i] = std::exp(-decay[i] * eta);
        out += 0.5 * b0[i] * ed[i];
    }
    for (int n = 0; n < modes; ++n) {
        double a = c2n[n] * std::exp(q[n] * eta);
        const double* row = bn.data() + static_cast<size_t>(n) * n_sec;
        for (int i = 0; i < n_sec; ++i)
            a += row[i] * ed[i];
        out += a * std::cos((n + 1) * std::numbers::pi * xi);
    }
    return out;
}

double CosineSeriesField::eta_derivative(double xi, double eta) const {
    const int n_sec = n_sections();
    const int modes = n_modes();
    std::vector<double> ed(n_sec);
    double out = 0.0;
    for (int i = 0; i < n_sec; ++i) {
        ed[i] = std::exp(-decay[i] * eta);
        out += -0.5 * b0[i] * decay[i] * ed[i];
    }
    for (int n = 0; n < modes; ++n) {
        double a = c2n[n] * q[n] * std::exp(q[n] * eta);
        const double* row = bn.data() + static_cast<size_t>(n) * n_sec;
        for (int i = 0; i < n_sec; ++i)
            a += -row[i] * decay[i] * ed[i];
        out += a * std::cos((n + 1) * std::numbers::pi * xi);
    }
    return out;
}

double CosineSeriesField::cosine_amplitudes(double eta, std::span<double> amplitudes) const {
    const int n_sec = n_sections();
    const int modes = n_modes();
    double spray_decay[64];
    double* ed = spray_decay;
    std::vector<double> heap;
    if (n_sec > 64) {
        heap.resize(n_sec);
        ed = heap.data();
    }
    double constant = c20;
    for (int i = 0; i < n_sec; ++i) {
        ed[i] = std::exp(-decay[i] * eta);
        constant += 0.5 * b0[i] * ed[i];
    }
    for (int n = 0; n < modes; ++n) {
        double a = c2n[n] * std::exp(q[n] * eta);
        const double* row = bn.data() + static_cast<size_t>(n) * n_sec;
        for (int i = 0; i < n_sec; ++i)
            a += row[i] * ed[i];
        amplitudes[n] = a;
    }
    return constant;
}

} // namespace sprayflame
