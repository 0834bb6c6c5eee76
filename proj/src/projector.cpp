#include "polymat/projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polymat/rng.hpp"
#include "polymat/threading.hpp"

namespace polymat {

double Geometry::view_angle(int view) const
{
    return std::numbers::pi * static_cast<double>(view) / n_views;
}

void Geometry::validate() const
{
    if (n_views < 1 || n_bins < 1)
        throw std::invalid_argument("Geometry: need at least one view and one bin");
    if (!(bin_spacing_cm > 0.0) || !(sample_step_cm > 0.0) || !(omega_scale_cm > 0.0))
        throw std::invalid_argument("Geometry: spacings must be positive");
}

Geometry Geometry::for_image(int width, int height, double pixel_size_cm, int n_views)
{
    Geometry g;
    g.n_views = n_views;
    const int n = std::max(width, height);
    g.n_bins = static_cast<int>(std::ceil(std::numbers::sqrt2 * n));
    g.bin_spacing_cm = pixel_size_cm;
    g.sample_step_cm = 0.5 * pixel_size_cm;
    g.omega_scale_cm = 0.5 * width * pixel_size_cm;
    g.validate();
    return g;
}

double& Sinogram::at(int view, int bin)
{
    return values[static_cast<std::size_t>(view) * geometry.n_bins + bin];
}

double Sinogram::at(int view, int bin) const
{
    return values[static_cast<std::size_t>(view) * geometry.n_bins + bin];
}

RaySamples trace_ray(const Geometry& geometry, int view, int bin)
{
    if (view < 0 || view >= geometry.n_views || bin < 0 || bin >= geometry.n_bins)
        throw std::out_of_range("trace_ray: view/bin out of range");

    const double theta = geometry.view_angle(view);
    const double dir_x = std::cos(theta);
    const double dir_y = std::sin(theta);
    // Detector axis, perpendicular to the ray.
    const double det_x = -dir_y;
    const double det_y = dir_x;

    const double offset_cm =
        (bin - 0.5 * (geometry.n_bins - 1)) * geometry.bin_spacing_cm;
    const double t = offset_cm / geometry.omega_scale_cm;
    const double px = t * det_x;
    const double py = t * det_y;

    // Clip the line p + s*dir against [-1,1]^2 (Liang-Barsky).
    double s0 = -std::numeric_limits<double>::infinity();
    double s1 = std::numeric_limits<double>::infinity();
    auto clip_axis = [&](double p, double d) {
        if (std::fabs(d) < 1e-15) {
            if (p < -1.0 || p > 1.0)
                s0 = 1.0, s1 = 0.0;  // empty
            return;
        }
        double a = (-1.0 - p) / d;
        double b = (1.0 - p) / d;
        if (a > b)
            std::swap(a, b);
        s0 = std::max(s0, a);
        s1 = std::min(s1, b);
    };
    clip_axis(px, dir_x);
    clip_axis(py, dir_y);

    RaySamples samples;
    if (s0 > s1)
        return samples;

    const double step = geometry.sample_step_cm / geometry.omega_scale_cm;
    const auto count = static_cast<std::size_t>(std::floor((s1 - s0) / step)) + 1;
    samples.xs.reserve(count);
    samples.ys.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double s = s0 + static_cast<double>(k) * step;
        samples.xs.push_back(px + s * dir_x);
        samples.ys.push_back(py + s * dir_y);
    }
    return samples;
}

std::vector<double> path_lengths(const FractionGrid& grid, const Geometry& geometry,
                                 const RaySamples& samples)
{
    const int m = grid.material_count();
    std::vector<double> paths(static_cast<std::size_t>(m), 0.0);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        int ix = 0;
        int iy = 0;
        grid.nearest_pixel(samples.xs[k], samples.ys[k], ix, iy);
        const auto cell = grid.at(ix, iy);
        for (int j = 0; j < m; ++j)
            paths[static_cast<std::size_t>(j)] += cell[j];
    }
    for (double& p : paths)
        p *= geometry.sample_step_cm;
    return paths;
}

std::vector<double> path_lengths(
    const std::function<void(double, double, std::span<double>)>& field,
    std::size_t material_count, const Geometry& geometry, const RaySamples& samples)
{
    std::vector<double> paths(material_count, 0.0);
    std::vector<double> alpha(material_count);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        field(samples.xs[k], samples.ys[k], alpha);
        for (std::size_t j = 0; j < material_count; ++j)
            paths[j] += alpha[j];
    }
    for (double& p : paths)
        p *= geometry.sample_step_cm;
    return paths;
}

double forward_project(const MaterialSet& set, const Spectrum& spectrum,
                       std::span<const double> paths, bool* saturated)
{
    if (paths.size() != set.count())
        throw std::invalid_argument("forward_project: path length vector mismatch");
    if (!(spectrum.grid == set.grid()))
        throw std::invalid_argument("forward_project: spectrum grid mismatch");

    const std::size_t bins = set.grid().size();
    double transmitted = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        double tau = 0.0;
        for (std::size_t j = 0; j < paths.size(); ++j)
            tau += set.at(j).lac[k] * paths[j];
        transmitted += spectrum.weights[k] * std::exp(-tau);
    }

    bool clamped = false;
    if (transmitted < transmission_floor) {
        transmitted = transmission_floor;
        clamped = true;
    }
    if (saturated)
        *saturated = clamped;
    return -std::log(transmitted);
}

Sinogram acquire(const FractionGrid& grid, const MaterialSet& set,
                 const Spectrum& spectrum, const Geometry& geometry,
                 const NoiseConfig& noise, std::uint64_t seed)
{
    geometry.validate();
    if (noise.enabled && !(noise.i0 > 0.0))
        throw std::invalid_argument("acquire: i0 must be positive");

    Sinogram sino;
    sino.geometry = geometry;
    sino.values.assign(static_cast<std::size_t>(geometry.n_views) * geometry.n_bins, 0.0);

    const std::size_t total = sino.values.size();
    parallel_for(total, [&](std::size_t idx) {
        const int view = static_cast<int>(idx) / geometry.n_bins;
        const int bin = static_cast<int>(idx) % geometry.n_bins;
        const RaySamples samples = trace_ray(geometry, view, bin);
        const auto paths = path_lengths(grid, geometry, samples);
        double rho = forward_project(set, spectrum, paths);
        if (noise.enabled) {
            const double expected = noise.i0 * std::exp(-rho);
            RandomStream rng(seed, static_cast<std::uint64_t>(view) + 1,
                             static_cast<std::uint64_t>(bin) + 1);
            const auto counts = rng.next_poisson(expected);
            const double observed = std::max<double>(1.0, static_cast<double>(counts));
            rho = -std::log(observed / noise.i0);
        }
        sino.values[idx] = rho;
    });
    return sino;
}

std::vector<double> fbp_reconstruct(const Sinogram& sinogram, int out_size)
{
    const Geometry& g = sinogram.geometry;
    g.validate();
    if (out_size < 1)
        throw std::invalid_argument("fbp_reconstruct: output size must be positive");

    const int nb = g.n_bins;
    const double dt = g.bin_spacing_cm;

    // Ram-Lak kernel sampled at bin pitch (Kak & Slaney form).
    std::vector<double> kernel(static_cast<std::size_t>(2 * nb - 1));
    for (int n = -(nb - 1); n <= nb - 1; ++n) {
        double h = 0.0;
        if (n == 0)
            h = 1.0 / (4.0 * dt * dt);
        else if (n % 2 != 0)
            h = -1.0 / (std::numbers::pi * std::numbers::pi * n * n * dt * dt);
        kernel[static_cast<std::size_t>(n + nb - 1)] = h;
    }

    std::vector<double> filtered(sinogram.values.size(), 0.0);
    parallel_for(static_cast<std::size_t>(g.n_views), [&](std::size_t view) {
        const double* row = sinogram.values.data() + view * nb;
        double* out = filtered.data() + view * nb;
        for (int i = 0; i < nb; ++i) {
            double acc = 0.0;
            for (int j = 0; j < nb; ++j)
                acc += row[j] * kernel[static_cast<std::size_t>(i - j + nb - 1)];
            out[i] = acc * dt;
        }
    });

    std::vector<double> image(static_cast<std::size_t>(out_size) * out_size, 0.0);
    const double d_theta = std::numbers::pi / g.n_views;
    parallel_for(static_cast<std::size_t>(out_size) * out_size, [&](std::size_t idx) {
        const int iy = static_cast<int>(idx) / out_size;
        const int ix = static_cast<int>(idx) % out_size;
        const double x = -1.0 + (2.0 * ix + 1.0) / out_size;
        const double y = -1.0 + (2.0 * iy + 1.0) / out_size;
        double acc = 0.0;
        for (int view = 0; view < g.n_views; ++view) {
            const double theta = g.view_angle(view);
            // Signed detector coordinate of (x, y) for this view, in bins.
            const double t_cm = (-std::sin(theta) * x + std::cos(theta) * y)
                              * g.omega_scale_cm;
            const double pos = t_cm / dt + 0.5 * (nb - 1);
            const int lo = static_cast<int>(std::floor(pos));
            if (lo < -1 || lo > nb - 1)
                continue;
            const double frac = pos - lo;
            const double v0 = (lo >= 0 && lo < nb)
                ? filtered[static_cast<std::size_t>(view) * nb + lo] : 0.0;
            const double v1 = (lo + 1 >= 0 && lo + 1 < nb)
                ? filtered[static_cast<std::size_t>(view) * nb + lo + 1] : 0.0;
            acc += v0 + frac * (v1 - v0);
        }
        image[idx] = acc * d_theta;
    });
    return image;
}

}  // namespace polymat
