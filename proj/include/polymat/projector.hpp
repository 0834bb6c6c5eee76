#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polymat/material.hpp"
#include "polymat/phantom.hpp"
#include "polymat/spectrum.hpp"

namespace polymat {

// 2D parallel-beam acquisition geometry. View angles are uniform over
// [0, pi); detector bins are centred on the rotation axis. Rays live in the
// normalized domain [-1,1]^2; omega_scale_cm converts one normalized unit
// to centimetres so path lengths match the 1/cm attenuation tables.
struct Geometry {
    int n_views = 0;
    int n_bins = 0;
    double bin_spacing_cm = 0.0;
    double sample_step_cm = 0.0;  // spacing of samples along a ray
    double omega_scale_cm = 1.0;

    double view_angle(int view) const;
    void validate() const;

    // Detector coverage of the image diagonal at one bin per pixel and
    // half-pixel ray sampling.
    static Geometry for_image(int width, int height, double pixel_size_cm,
                              int n_views);
};

struct Sinogram {
    Geometry geometry;
    // Row-major (view, bin) log-attenuation values.
    std::vector<double> values;

    double& at(int view, int bin);
    double at(int view, int bin) const;
};

// Equally spaced sample positions along one ray, clipped to the square.
struct RaySamples {
    std::vector<double> xs;  // normalized coordinates
    std::vector<double> ys;
    std::size_t size() const { return xs.size(); }
};

RaySamples trace_ray(const Geometry& geometry, int view, int bin);

// Per-material path lengths of one ray through a fraction field, in cm:
// p_j = sample_step_cm * sum over samples of alpha_j(sample).
std::vector<double> path_lengths(const FractionGrid& grid, const Geometry& geometry,
                                 const RaySamples& samples);

// Same, but sampling an arbitrary fraction field (e.g. a coordinate
// network). `field(x, y, alpha_out)` must fill a vector of length M.
std::vector<double> path_lengths(
    const std::function<void(double, double, std::span<double>)>& field,
    std::size_t material_count, const Geometry& geometry, const RaySamples& samples);

// Transmitted fractions below this are clamped before the log; the clamp is
// reported through the saturated flag and treated as a constant by the
// gradients.
inline constexpr double transmission_floor = 1e-12;

// Discrete polychromatic projection:
//   rho = -ln( sum_k eta(E_k) * exp(-sum_j mu_j(E_k) * p_j) ).
double forward_project(const MaterialSet& set, const Spectrum& spectrum,
                       std::span<const double> paths, bool* saturated = nullptr);

struct NoiseConfig {
    bool enabled = true;
    double i0 = 1e5;  // photons per ray
};

// Simulates a full scan: expected transmission per ray from the forward
// model, Poisson photon counting at i0 photons per ray, log-normalized to a
// sinogram. Counter-based per-ray RNG streams keyed by (seed, view, bin)
// make serial and parallel runs bit-identical.
Sinogram acquire(const FractionGrid& grid, const MaterialSet& set,
                 const Spectrum& spectrum, const Geometry& geometry,
                 const NoiseConfig& noise, std::uint64_t seed);

// Ramp-filtered backprojection onto an out_size x out_size image of the
// normalized domain. Returns row-major scalar values (1/cm for consistent
// sinograms). Baseline for beam-hardening comparisons only.
std::vector<double> fbp_reconstruct(const Sinogram& sinogram, int out_size);

}  // namespace polymat
