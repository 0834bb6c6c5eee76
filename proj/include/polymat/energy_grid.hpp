#pragma once

#include <cstddef>
#include <vector>

namespace polymat {

// Uniform photon-energy grid in keV. All spectra, attenuation tables and
// the forward model share one grid instance.
class EnergyGrid {
public:
    // Bins are min_keV, min_keV + step_keV, ..., max_keV inclusive.
    EnergyGrid(double min_kev, double max_kev, double step_kev);

    std::size_t size() const { return energies_.size(); }
    double bin_width() const { return step_; }
    double min_kev() const { return energies_.front(); }
    double max_kev() const { return energies_.back(); }
    double at(std::size_t i) const { return energies_[i]; }
    const std::vector<double>& energies() const { return energies_; }

    bool operator==(const EnergyGrid& other) const;

private:
    std::vector<double> energies_;
    double step_;
};

}  // namespace polymat
