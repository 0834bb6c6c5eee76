#pragma once

#include <span>
#include <vector>

#include "polymat/energy_grid.hpp"
#include "polymat/material.hpp"

namespace polymat {

// Normalized photon-energy distribution on a grid: entries nonnegative and
// summing to one.
struct Spectrum {
    EnergyGrid grid;
    std::vector<double> weights;

    // Photon-weighted mean energy in keV.
    double mean_energy() const;
};

// Validates the Spectrum invariants (nonnegative, sums to 1 within 1e-9).
Spectrum make_spectrum(EnergyGrid grid, std::vector<double> weights);

// Candidate spectra sharing one grid; the convex hull of its members models
// the unknown source spectrum.
class SpectrumLibrary {
public:
    SpectrumLibrary(EnergyGrid grid, std::vector<Spectrum> spectra);

    const EnergyGrid& grid() const { return grid_; }
    std::size_t count() const { return spectra_.size(); }
    const Spectrum& at(std::size_t i) const { return spectra_[i]; }

    // Uniform-weight average of the members: the "initial" spectrum that a
    // fresh all-equal weight vector composes.
    Spectrum average() const;

private:
    EnergyGrid grid_;
    std::vector<Spectrum> spectra_;
};

// Unconstrained spectrum weights; SoftMax maps them onto the simplex.
struct SpectrumWeights {
    std::vector<double> gamma;
};

// exp(g - max(g)) / sum, the usual overflow-safe form.
std::vector<double> softmax(std::span<const double> gamma);

// Pulls a gradient w.r.t. SoftMax outputs back to the logits:
// d_gamma[i] = s_i * (upstream[i] - sum_j upstream[j] * s_j).
std::vector<double> softmax_jacobian_apply(std::span<const double> gamma,
                                           std::span<const double> upstream);

// eta(E) = sum_i softmax(gamma)_i * eta_i(E). On the simplex by construction.
Spectrum compose_spectrum(const SpectrumLibrary& library, const SpectrumWeights& weights);

// Sum absolute (l1) distance between two spectra on the same grid.
double spectrum_error(const Spectrum& estimate, const Spectrum& reference);

// Builds a filtered-bremsstrahlung library: a Kramers source shape
// (E_max - E)/E up to the tube voltage, hardened by Beer-Lambert filtration
// through `filter` at each thickness, each member normalized. Thicknesses
// are in millimetres and must be distinct and nonnegative.
SpectrumLibrary generate_library(double kvp_kev,
                                 std::span<const double> filter_thicknesses_mm,
                                 const EnergyGrid& grid, const Material& filter);

}  // namespace polymat
