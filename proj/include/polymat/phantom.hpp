#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polymat {

// Procedural 2D phantom: an ordered list of shapes painted over a uniform
// background, each carrying a volume-fraction vector and a region label.

enum class ShapeKind { ellipse, rectangle };

struct Shape {
    ShapeKind kind = ShapeKind::ellipse;
    double center_x_cm = 0.0;
    double center_y_cm = 0.0;
    // Semi-axes for ellipses, full extents for rectangles.
    double size_x_cm = 1.0;
    double size_y_cm = 1.0;
    double rotation_rad = 0.0;
    std::vector<double> alpha;  // volume fractions, length M, on the simplex
    std::string roi_label;

    bool contains(double x_cm, double y_cm) const;
};

struct PhantomSpec {
    int width = 0;   // pixels
    int height = 0;  // pixels
    double pixel_size_cm = 0.1;
    int material_count = 0;
    // Background is one-hot on this material (air by convention, last slot).
    int background_index = -1;
    std::vector<Shape> shapes;

    // Throws on invalid dimensions, off-simplex alphas or bad lengths.
    void validate() const;
};

// Per-pixel volume-fraction vectors over the image domain. Pixel (ix, iy)
// covers the cell whose centre maps into the normalized domain
// [-1,1] x [-1,1]; row iy = 0 is the bottom of that domain.
class FractionGrid {
public:
    FractionGrid(int width, int height, double pixel_size_cm, int material_count);

    int width() const { return width_; }
    int height() const { return height_; }
    double pixel_size_cm() const { return pixel_size_cm_; }
    int material_count() const { return materials_; }

    std::span<double> at(int ix, int iy);
    std::span<const double> at(int ix, int iy) const;

    const std::vector<double>& raw() const { return data_; }
    std::vector<double>& raw() { return data_; }

    // Copy of one material's map (row-major, height x width).
    std::vector<double> channel(int material) const;

    // Pixel centre in normalized coordinates.
    double center_omega_x(int ix) const;
    double center_omega_y(int iy) const;

    // Nearest pixel for a normalized coordinate, clamped to the image.
    void nearest_pixel(double omega_x, double omega_y, int& ix, int& iy) const;

    // Half the physical image width: 1 normalized unit in cm.
    double omega_scale_cm() const;

    bool operator==(const FractionGrid& other) const;

private:
    int width_;
    int height_;
    double pixel_size_cm_;
    int materials_;
    std::vector<double> data_;
};

FractionGrid rasterize(const PhantomSpec& spec);

// Owner shape index per pixel under painter's order (-1 = background).
std::vector<std::int32_t> rasterize_owners(const PhantomSpec& spec);

struct RoiStats {
    std::size_t pixel_count = 0;
    std::vector<double> mean;  // per material
    std::vector<double> std;   // population form
};

// Mean and standard deviation of `grid` over the pixels owned by the shapes
// labelled `label` in the reference spec.
RoiStats roi_stats(const FractionGrid& grid, const std::string& label,
                   const PhantomSpec& reference);

}  // namespace polymat
