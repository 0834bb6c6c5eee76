#include "polymat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace polymat {

namespace {
constexpr double kNormTolerance = 1e-9;
}

double Spectrum::mean_energy() const
{
    double mean = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        mean += weights[i] * grid.at(i);
    return mean;
}

Spectrum make_spectrum(EnergyGrid grid, std::vector<double> weights)
{
    if (weights.size() != grid.size())
        throw std::invalid_argument("make_spectrum: weight length mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0))
            throw std::invalid_argument("make_spectrum: negative weight");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kNormTolerance)
        throw std::invalid_argument("make_spectrum: weights must sum to 1");
    return Spectrum{std::move(grid), std::move(weights)};
}

SpectrumLibrary::SpectrumLibrary(EnergyGrid grid, std::vector<Spectrum> spectra)
    : grid_(std::move(grid)), spectra_(std::move(spectra))
{
    if (spectra_.empty())
        throw std::invalid_argument("SpectrumLibrary: need at least one member");
    for (const auto& s : spectra_) {
        if (!(s.grid == grid_))
            throw std::invalid_argument("SpectrumLibrary: member grid mismatch");
        double sum = 0.0;
        for (double w : s.weights) {
            if (!(w >= 0.0))
                throw std::invalid_argument("SpectrumLibrary: negative member weight");
            sum += w;
        }
        if (std::fabs(sum - 1.0) > kNormTolerance)
            throw std::invalid_argument("SpectrumLibrary: member not normalized");
    }
}

Spectrum SpectrumLibrary::average() const
{
    std::vector<double> w(grid_.size(), 0.0);
    for (const auto& s : spectra_)
        for (std::size_t k = 0; k < w.size(); ++k)
            w[k] += s.weights[k];
    const double inv = 1.0 / static_cast<double>(spectra_.size());
    for (double& v : w)
        v *= inv;
    return Spectrum{grid_, std::move(w)};
}

std::vector<double> softmax(std::span<const double> gamma)
{
    if (gamma.empty())
        throw std::invalid_argument("softmax: empty input");
    const double m = *std::max_element(gamma.begin(), gamma.end());
    if (!std::isfinite(m))
        throw std::invalid_argument("softmax: non-finite input");
    std::vector<double> s(gamma.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        s[i] = std::exp(gamma[i] - m);
        sum += s[i];
    }
    for (double& v : s)
        v /= sum;
    return s;
}

std::vector<double> softmax_jacobian_apply(std::span<const double> gamma,
                                           std::span<const double> upstream)
{
    if (gamma.size() != upstream.size())
        throw std::invalid_argument("softmax_jacobian_apply: length mismatch");
    const std::vector<double> s = softmax(gamma);
    double dot = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        dot += upstream[i] * s[i];
    std::vector<double> grad(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        grad[i] = s[i] * (upstream[i] - dot);
    return grad;
}

Spectrum compose_spectrum(const SpectrumLibrary& library, const SpectrumWeights& weights)
{
    if (weights.gamma.size() != library.count())
        throw std::invalid_argument("compose_spectrum: gamma length mismatch");
    const std::vector<double> s = softmax(weights.gamma);
    std::vector<double> eta(library.grid().size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& member = library.at(i).weights;
        for (std::size_t k = 0; k < eta.size(); ++k)
            eta[k] += s[i] * member[k];
    }
    return Spectrum{library.grid(), std::move(eta)};
}

double spectrum_error(const Spectrum& estimate, const Spectrum& reference)
{
    if (!(estimate.grid == reference.grid))
        throw std::invalid_argument("spectrum_error: grid mismatch");
    double err = 0.0;
    for (std::size_t k = 0; k < estimate.weights.size(); ++k)
        err += std::fabs(estimate.weights[k] - reference.weights[k]);
    return err;
}

SpectrumLibrary generate_library(double kvp_kev,
                                 std::span<const double> filter_thicknesses_mm,
                                 const EnergyGrid& grid, const Material& filter)
{
    if (!(kvp_kev > grid.min_kev()))
        throw std::invalid_argument("generate_library: kVp must exceed the grid minimum");
    if (!(kvp_kev <= grid.max_kev()))
        throw std::invalid_argument("generate_library: kVp must lie within the grid span");
    if (filter.lac.size() != grid.size())
        throw std::invalid_argument("generate_library: filter material grid mismatch");
    if (filter_thicknesses_mm.empty())
        throw std::invalid_argument("generate_library: need at least one thickness");

    std::set<double> seen;
    for (double t : filter_thicknesses_mm) {
        if (!(t >= 0.0))
            throw std::invalid_argument("generate_library: negative filter thickness");
        if (!seen.insert(t).second)
            throw std::invalid_argument("generate_library: duplicate filter thickness");
    }

    std::vector<Spectrum> members;
    members.reserve(filter_thicknesses_mm.size());
    for (double t_mm : filter_thicknesses_mm) {
        std::vector<double> w(grid.size(), 0.0);
        double sum = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double e = grid.at(k);
            if (e > kvp_kev)
                continue;
            const double source = (kvp_kev - e) / e;  // Kramers shape
            const double filtered = source * std::exp(-filter.lac[k] * t_mm * 0.1);
            w[k] = filtered;
            sum += filtered;
        }
        if (!(sum > 0.0))
            throw std::invalid_argument("generate_library: spectrum vanished after filtration");
        for (double& v : w)
            v /= sum;
        members.push_back(Spectrum{grid, std::move(w)});
    }
    return SpectrumLibrary(grid, std::move(members));
}

}  // namespace polymat
