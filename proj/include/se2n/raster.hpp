#pragma once

#include "se2n/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace se2n {

/// Real grayscale image on a square pixel lattice. Pixel (col, row) sits at
/// origin + spacing * (col, row); outside the raster the image is zero.
struct Raster {
    RealGrid pixels;
    Vec2 origin = Vec2::Zero();
    double spacing = 1.0;

    Raster() = default;
    explicit Raster(RealGrid px, Vec2 origin = Vec2::Zero(), double spacing = 1.0);

    int width() const { return static_cast<int>(pixels.cols()); }
    int height() const { return static_cast<int>(pixels.rows()); }
    Vec2 position(double col, double row) const { return origin + spacing * Vec2(col, row); }
};

struct RgbImage {
    RealGrid r, g, b;
};

struct LabeledSample {
    Raster raster;
    int class_id = 0;
    std::optional<std::string> pose_tag;
    std::string name;  // file name or synthetic identifier
};

/// ITU-R BT.601 luma.
Raster to_grayscale(const RgbImage& rgb);

/// Riemann sum of the pixels, i.e. the integral of f.
double average(const Raster& f);

/// Intensity barycenter in continuous coordinates. Throws ZeroAverageError
/// when |average| is below 1e-12 * pixel count * 255 (in intensity units).
Vec2 barycenter(const Raster& f);

/// Adds N(0, sd^2) per pixel and clips to [0, 255]. sd == 0 returns the
/// input unchanged.
Raster add_gaussian_noise(const Raster& f, double sd, std::uint64_t seed);

/// Bilinear resampling of f rotated counterclockwise by `angle` about
/// `center` (continuous coordinates). Same geometry as the input.
Raster rotate_resampled(const Raster& f, double angle, const Vec2& center);

/// Integer pixel translation with zero fill.
Raster shift_pixels(const Raster& f, int dx, int dy);

}  // namespace se2n
