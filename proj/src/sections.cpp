#include "sprayflame/sections.hpp"

#include <numeric>
#include <stdexcept>

namespace sprayflame {

SectionGrid build_section_grid(int n_sections, double monomer_width) {
    if (n_sections < 1)
        throw std::invalid_argument("n_sections must be >= 1");
    if (!(monomer_width > 0.0))
        throw std::invalid_argument("monomer_width must be positive");
    SectionGrid grid;
    grid.d_low.resize(n_sections);
    grid.d_high.resize(n_sections);
    for (int i = 0; i < n_sections; ++i) {
        grid.d_low[i] = (i + 1) * monomer_width;
        grid.d_high[i] = (i + 2) * monomer_width;
    }
    return grid;
}

void validate(const SectionGrid& grid) {
    const int n = grid.n_sections();
    if (n < 1 || grid.d_high.size() != grid.d_low.size())
        throw std::invalid_argument("section grid needs at least one section");
    for (int i = 0; i < n; ++i) {
        if (!(grid.d_low[i] < grid.d_high[i]))
            throw std::invalid_argument("section grid requires d_low < d_high");
        if (i + 1 < n && grid.d_high[i] != grid.d_low[i + 1])
            throw std::invalid_argument("section grid must be contiguous");
    }
}

double InitialDistribution::total() const {
    return std::accumulate(delta.begin(), delta.end(), 0.0);
}

void validate(const InitialDistribution& init) {
    double sum = 0.0;
    for (double d : init.delta) {
        if (!(d >= 0.0))
            throw std::invalid_argument("liquid fractions must be non-negative");
        sum += d;
    }
    if (sum > 1.0 + 1e-12)
        throw std::invalid_argument("liquid fractions must sum to at most 1");
}

} // namespace sprayflame
