#ifndef SPRAYFLAME_SECTIONS_HPP
#define SPRAYFLAME_SECTIONS_HPP

#include <vector>

namespace sprayflame {

/// Contiguous droplet-diameter sectioning. Section i covers the
/// dimensionless diameter range [d_low[i], d_high[i]), with
/// d_high[i] == d_low[i+1].
struct SectionGrid {
    std::vector<double> d_low;
    std::vector<double> d_high;

    int n_sections() const { return static_cast<int>(d_low.size()); }
};

/// Uniform grid: section i spans [i*w, (i+1)*w) with i starting at 1.
/// Throws std::invalid_argument on non-positive inputs.
SectionGrid build_section_grid(int n_sections, double monomer_width);

/// Validates the contiguity and ordering invariants; throws on violation.
void validate(const SectionGrid& grid);

/// Per-section liquid fuel fraction at injection (the iDSD).
struct InitialDistribution {
    std::vector<double> delta;

    double total() const;
    int n_sections() const { return static_cast<int>(delta.size()); }
};

/// Requires delta_i >= 0 and sum <= 1; throws otherwise.
void validate(const InitialDistribution& init);

} // namespace sprayflame

#endif
