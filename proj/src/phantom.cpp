#include "polymat/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polymat/material.hpp"

namespace polymat {

bool Shape::contains(double x_cm, double y_cm) const
{
    const double dx = x_cm - center_x_cm;
    const double dy = y_cm - center_y_cm;
    const double c = std::cos(rotation_rad);
    const double s = std::sin(rotation_rad);
    // Rotate the point into the shape frame.
    const double u = c * dx + s * dy;
    const double v = -s * dx + c * dy;
    if (kind == ShapeKind::ellipse) {
        const double nx = u / size_x_cm;
        const double ny = v / size_y_cm;
        return nx * nx + ny * ny <= 1.0;
    }
    return std::fabs(u) <= 0.5 * size_x_cm && std::fabs(v) <= 0.5 * size_y_cm;
}

void PhantomSpec::validate() const
{
    if (width < 8 || height < 8)
        throw std::invalid_argument("PhantomSpec: image must be at least 8x8 pixels");
    if (!(pixel_size_cm > 0.0))
        throw std::invalid_argument("PhantomSpec: pixel size must be positive");
    if (material_count < 2)
        throw std::invalid_argument("PhantomSpec: need at least two materials");
    const int bg = background_index < 0 ? material_count - 1 : background_index;
    if (bg < 0 || bg >= material_count)
        throw std::invalid_argument("PhantomSpec: background index out of range");
    for (const auto& shape : shapes) {
        if (static_cast<int>(shape.alpha.size()) != material_count)
            throw std::invalid_argument("PhantomSpec: shape '" + shape.roi_label
                                        + "' fraction length != material count");
        if (!on_simplex(shape.alpha))
            throw std::invalid_argument("PhantomSpec: shape '" + shape.roi_label
                                        + "' fractions are not on the simplex");
        if (!(shape.size_x_cm > 0.0) || !(shape.size_y_cm > 0.0))
            throw std::invalid_argument("PhantomSpec: shape sizes must be positive");
    }
}

FractionGrid::FractionGrid(int width, int height, double pixel_size_cm, int material_count)
    : width_(width), height_(height), pixel_size_cm_(pixel_size_cm),
      materials_(material_count),
      data_(static_cast<std::size_t>(width) * height * material_count, 0.0)
{
    if (width < 1 || height < 1 || material_count < 1)
        throw std::invalid_argument("FractionGrid: invalid dimensions");
    if (!(pixel_size_cm > 0.0))
        throw std::invalid_argument("FractionGrid: pixel size must be positive");
}

std::span<double> FractionGrid::at(int ix, int iy)
{
    const std::size_t base =
        (static_cast<std::size_t>(iy) * width_ + ix) * materials_;
    return {data_.data() + base, static_cast<std::size_t>(materials_)};
}

std::span<const double> FractionGrid::at(int ix, int iy) const
{
    const std::size_t base =
        (static_cast<std::size_t>(iy) * width_ + ix) * materials_;
    return {data_.data() + base, static_cast<std::size_t>(materials_)};
}

std::vector<double> FractionGrid::channel(int material) const
{
    std::vector<double> out(static_cast<std::size_t>(width_) * height_);
    for (int iy = 0; iy < height_; ++iy)
        for (int ix = 0; ix < width_; ++ix)
            out[static_cast<std::size_t>(iy) * width_ + ix] = at(ix, iy)[material];
    return out;
}

double FractionGrid::center_omega_x(int ix) const
{
    return -1.0 + (2.0 * ix + 1.0) / width_;
}

double FractionGrid::center_omega_y(int iy) const
{
    return -1.0 + (2.0 * iy + 1.0) / height_;
}

void FractionGrid::nearest_pixel(double omega_x, double omega_y, int& ix, int& iy) const
{
    ix = static_cast<int>(std::floor((omega_x + 1.0) * 0.5 * width_));
    iy = static_cast<int>(std::floor((omega_y + 1.0) * 0.5 * height_));
    ix = std::clamp(ix, 0, width_ - 1);
    iy = std::clamp(iy, 0, height_ - 1);
}

double FractionGrid::omega_scale_cm() const
{
    return 0.5 * width_ * pixel_size_cm_;
}

bool FractionGrid::operator==(const FractionGrid& other) const
{
    return width_ == other.width_ && height_ == other.height_
        && pixel_size_cm_ == other.pixel_size_cm_ && materials_ == other.materials_
        && data_ == other.data_;
}

namespace {

// Pixel centre in cm, with the image centre at the origin.
inline double pixel_center_cm(int i, int n, double pixel_size)
{
    return (i + 0.5 - 0.5 * n) * pixel_size;
}

}  // namespace

std::vector<std::int32_t> rasterize_owners(const PhantomSpec& spec)
{
    spec.validate();
    std::vector<std::int32_t> owners(
        static_cast<std::size_t>(spec.width) * spec.height, -1);
    for (int iy = 0; iy < spec.height; ++iy) {
        const double y = pixel_center_cm(iy, spec.height, spec.pixel_size_cm);
        for (int ix = 0; ix < spec.width; ++ix) {
            const double x = pixel_center_cm(ix, spec.width, spec.pixel_size_cm);
            std::int32_t owner = -1;
            for (std::size_t s = 0; s < spec.shapes.size(); ++s)
                if (spec.shapes[s].contains(x, y))
                    owner = static_cast<std::int32_t>(s);
            owners[static_cast<std::size_t>(iy) * spec.width + ix] = owner;
        }
    }
    return owners;
}

FractionGrid rasterize(const PhantomSpec& spec)
{
    const auto owners = rasterize_owners(spec);
    FractionGrid grid(spec.width, spec.height, spec.pixel_size_cm, spec.material_count);
    const int bg = spec.background_index < 0 ? spec.material_count - 1
                                             : spec.background_index;
    for (int iy = 0; iy < spec.height; ++iy) {
        for (int ix = 0; ix < spec.width; ++ix) {
            auto cell = grid.at(ix, iy);
            const std::int32_t owner =
                owners[static_cast<std::size_t>(iy) * spec.width + ix];
            if (owner < 0) {
                cell[bg] = 1.0;
            } else {
                const auto& alpha = spec.shapes[static_cast<std::size_t>(owner)].alpha;
                std::copy(alpha.begin(), alpha.end(), cell.begin());
            }
        }
    }
    return grid;
}

RoiStats roi_stats(const FractionGrid& grid, const std::string& label,
                   const PhantomSpec& reference)
{
    bool label_exists = false;
    for (const auto& shape : reference.shapes)
        if (shape.roi_label == label)
            label_exists = true;
    if (!label_exists)
        throw std::out_of_range("roi_stats: unknown ROI label " + label);
    if (grid.width() != reference.width || grid.height() != reference.height)
        throw std::invalid_argument("roi_stats: grid does not match the reference spec");

    const auto owners = rasterize_owners(reference);
    const int m = grid.material_count();
    RoiStats stats;
    stats.mean.assign(m, 0.0);
    stats.std.assign(m, 0.0);

    for (int iy = 0; iy < grid.height(); ++iy) {
        for (int ix = 0; ix < grid.width(); ++ix) {
            const std::int32_t owner =
                owners[static_cast<std::size_t>(iy) * grid.width() + ix];
            if (owner < 0 || reference.shapes[static_cast<std::size_t>(owner)].roi_label != label)
                continue;
            ++stats.pixel_count;
            const auto cell = grid.at(ix, iy);
            for (int j = 0; j < m; ++j)
                stats.mean[j] += cell[j];
        }
    }
    if (stats.pixel_count == 0)
        return stats;  // label exists but rasterized to nothing

    for (int j = 0; j < m; ++j)
        stats.mean[j] /= static_cast<double>(stats.pixel_count);

    for (int iy = 0; iy < grid.height(); ++iy) {
        for (int ix = 0; ix < grid.width(); ++ix) {
            const std::int32_t owner =
                owners[static_cast<std::size_t>(iy) * grid.width() + ix];
            if (owner < 0 || reference.shapes[static_cast<std::size_t>(owner)].roi_label != label)
                continue;
            const auto cell = grid.at(ix, iy);
            for (int j = 0; j < m; ++j) {
                const double d = cell[j] - stats.mean[j];
                stats.std[j] += d * d;
            }
        }
    }
    for (int j = 0; j < m; ++j)
        stats.std[j] = std::sqrt(stats.std[j] / static_cast<double>(stats.pixel_count));
    return stats;
}

}  // namespace polymat
