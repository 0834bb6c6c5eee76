#pragma once

#include <span>
#include <string>
#include <vector>

#include "polymat/energy_grid.hpp"

namespace polymat {

// A basis material: density plus linear attenuation coefficients (1/cm)
// resolved on a shared energy grid.
struct Material {
    std::string name;
    double density = 0.0;       // g/cm3
    std::vector<double> lac;    // 1/cm, one entry per grid energy
};

// Ordered set of basis materials on one grid. Immutable after construction;
// safe for concurrent reads.
class MaterialSet {
public:
    MaterialSet(EnergyGrid grid, std::vector<Material> materials);

    const EnergyGrid& grid() const { return grid_; }
    std::size_t count() const { return materials_.size(); }
    const Material& at(std::size_t i) const { return materials_[i]; }
    const std::vector<Material>& materials() const { return materials_; }

    // Index of a material by name; throws if absent.
    std::size_t index_of(const std::string& name) const;

private:
    EnergyGrid grid_;
    std::vector<Material> materials_;
};

// Parses an attenuation CSV (header lines `# material: <name>` and
// `# density_g_cm3: <float>`, then `energy_keV,mac_cm2_g` rows in ascending
// energy) and resamples it onto `grid`. Mass attenuation is interpolated
// linearly in energy, then scaled by density to yield LAC in 1/cm.
Material ingest_attenuation_table(const std::string& path, const EnergyGrid& grid);

// Mixture LAC at one grid energy: sum_i alpha[i] * mu_i(E). `alpha` must lie
// on the simplex within `simplex_tolerance`.
double mixture_lac(const MaterialSet& set, std::span<const double> alpha,
                   std::size_t e_index);

inline constexpr double simplex_tolerance = 1e-6;

// True when every entry is in [-tol, 1+tol] and the sum is within tol of 1.
bool on_simplex(std::span<const double> alpha, double tol = simplex_tolerance);

}  // namespace polymat
