#include "polymat/energy_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace polymat {

EnergyGrid::EnergyGrid(double min_kev, double max_kev, double step_kev)
    : step_(step_kev)
{
    if (!(min_kev > 0.0))
        throw std::invalid_argument("EnergyGrid: energies must be positive");
    if (!(step_kev > 0.0))
        throw std::invalid_argument("EnergyGrid: step must be positive");
    if (!(max_kev > min_kev))
        throw std::invalid_argument("EnergyGrid: max must exceed min");

    const double span = max_kev - min_kev;
    const auto bins = static_cast<std::size_t>(std::llround(span / step_kev));
    if (std::fabs(bins * step_kev - span) > 1e-9 * span)
        throw std::invalid_argument("EnergyGrid: span is not a multiple of step");

    energies_.reserve(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        energies_.push_back(min_kev + static_cast<double>(i) * step_kev);
    if (energies_.size() < 2)
        throw std::invalid_argument("EnergyGrid: need at least two bins");
}

bool EnergyGrid::operator==(const EnergyGrid& other) const
{
    return energies_ == other.energies_;
}

}  // namespace polymat
