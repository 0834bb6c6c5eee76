#include "polymat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace polymat {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (tag_a * 0xD6E8FEB86659FD93ULL));
    h = splitmix64(h ^ (tag_b * 0xCA5A826395121157ULL));
    state_ = h;
}

std::uint64_t RandomStream::next_u64()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RandomStream::next_double()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_range(double lo, double hi)
{
    return lo + (hi - lo) * next_double();
}

std::uint64_t RandomStream::next_below(std::uint64_t n)
{
    // Rejection to avoid modulo bias.
    if (n == 0)
        throw std::invalid_argument("next_below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

namespace {

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS. Valid for mean >= 10.
std::uint64_t poisson_ptrs(RandomStream& rng, double mean)
{
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us))
            continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -mean + k * loglam - std::lgamma(k + 1.0);
        if (lhs <= rhs)
            return static_cast<std::uint64_t>(k);
    }
}

std::uint64_t poisson_inversion(RandomStream& rng, double mean)
{
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = rng.next_double();
    while (prod > limit) {
        ++k;
        prod *= rng.next_double();
    }
    return k;
}

}  // namespace

std::uint64_t RandomStream::next_poisson(double mean)
{
    if (!(mean >= 0.0))
        throw std::invalid_argument("next_poisson: mean must be nonnegative");
    if (mean == 0.0)
        return 0;
    if (mean < 10.0)
        return poisson_inversion(*this, mean);
    return poisson_ptrs(*this, mean);
}

}  // namespace polymat
