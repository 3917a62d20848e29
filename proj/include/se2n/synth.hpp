#pragma once

#include "se2n/raster.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace se2n {

/// Random textured object: a smooth star-shaped blob or a star polygon,
/// with a linear intensity ramp and one elliptical inner spot. Lengths are
/// in units of the nominal radius.
struct ShapeSpec {
    bool polygon = false;
    std::vector<double> harmonic_amp;    // blob: a_j for j = 2, 3, ...
    std::vector<double> harmonic_phase;  // blob
    std::vector<Vec2> vertices;          // polygon, counterclockwise
    double base = 180.0;
    Vec2 ramp = Vec2::Zero();  // intensity change per unit radius
    Vec2 spot_center = Vec2::Zero();
    Vec2 spot_axes = Vec2(0.3, 0.2);
    double spot_angle = 0.0;
    double spot_delta = 0.0;
    Vec2 centroid = Vec2::Zero();  // intensity barycenter, filled by random_shape
    std::vector<double> radius_table;

    bool inside(const Vec2& p) const;
    double intensity(const Vec2& p) const;  // 0 outside
};

ShapeSpec random_shape(std::mt19937_64& rng);

/// Renders the shape with its barycenter at the pixel-grid center, rotated
/// counterclockwise by `angle` and scaled so the nominal radius is
/// 0.25 * size * scale. 4x4 supersampling per pixel.
Raster render_shape(const ShapeSpec& shape, int size, double angle, double scale = 1.0);

/// `poses` in-plane rotations (spaced 360/poses degrees) of one random shape
/// per class. Samples are named `obj<class+1>__<deg>` and ordered by class,
/// then pose. Deterministic given seed.
std::vector<LabeledSample> synth_dataset(int num_classes, int poses, int size, std::uint64_t seed);

}  // namespace se2n
