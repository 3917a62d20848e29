#include "se2n/synth.hpp"

#include <algorithm>
#include <cstdio>

namespace se2n {

namespace {

constexpr int kRadiusTableSize = 4096;
constexpr int kSupersample = 4;
constexpr double kNominalRadius = 0.25;  // fraction of raster size

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

bool ShapeSpec::inside(const Vec2& p) const {
    if (polygon) {
        bool in = false;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Vec2& a = vertices[i];
            const Vec2& b = vertices[j];
            if ((a.y() > p.y()) != (b.y() > p.y()) &&
                p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
                in = !in;
            }
        }
        return in;
    }
    const double r = p.norm();
    if (r > 1.7) return false;
    double t = std::atan2(p.y(), p.x()) / kTwoPi;
    if (t < 0) t += 1.0;
    const double x = t * kRadiusTableSize;
    const int i0 = static_cast<int>(x) % kRadiusTableSize;
    const int i1 = (i0 + 1) % kRadiusTableSize;
    const double w = x - std::floor(x);
    return r <= (1 - w) * radius_table[i0] + w * radius_table[i1];
}

double ShapeSpec::intensity(const Vec2& p) const {
    if (!inside(p)) return 0.0;
    double v = base + ramp.dot(p);
    const double c = std::cos(spot_angle), s = std::sin(spot_angle);
    const Vec2 d = p - spot_center;
    const double u = (c * d.x() + s * d.y()) / spot_axes.x();
    const double w = (-s * d.x() + c * d.y()) / spot_axes.y();
    if (u * u + w * w <= 1.0) v += spot_delta;
    return std::clamp(v, 5.0, 255.0);
}

ShapeSpec random_shape(std::mt19937_64& rng) {
    ShapeSpec s;
    s.polygon = uniform(rng, 0, 1) < 0.5;
    if (s.polygon) {
        const int n = 5 + static_cast<int>(uniform(rng, 0, 5));
        for (int i = 0; i < n; ++i) {
            const double theta = kTwoPi * (i + uniform(rng, -0.3, 0.3)) / n;
            const double r = uniform(rng, 0.55, 1.3);
            s.vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
        }
    } else {
        for (int j = 2; j <= 5; ++j) {
            s.harmonic_amp.push_back(uniform(rng, 0.0, 0.16));
            s.harmonic_phase.push_back(uniform(rng, 0.0, kTwoPi));
        }
        s.radius_table.resize(kRadiusTableSize);
        for (int i = 0; i < kRadiusTableSize; ++i) {
            const double theta = kTwoPi * i / kRadiusTableSize;
            double r = 1.0;
            for (std::size_t j = 0; j < s.harmonic_amp.size(); ++j) {
                r += s.harmonic_amp[j] * std::cos((j + 2) * theta + s.harmonic_phase[j]);
            }
            s.radius_table[i] = r;
        }
    }
    s.base = uniform(rng, 110, 220);
    const double ramp_angle = uniform(rng, 0, kTwoPi);
    s.ramp = uniform(rng, 0, 40) * Vec2(std::cos(ramp_angle), std::sin(ramp_angle));
    const double spot_r = uniform(rng, 0, 0.35), spot_t = uniform(rng, 0, kTwoPi);
    s.spot_center = spot_r * Vec2(std::cos(spot_t), std::sin(spot_t));
    s.spot_axes = Vec2(uniform(rng, 0.15, 0.35), uniform(rng, 0.1, 0.25));
    s.spot_angle = uniform(rng, 0, kTwoPi);
    s.spot_delta = uniform(rng, -90, 60);

    // Intensity barycenter on a fine grid.
    constexpr int n = 640;
    constexpr double extent = 1.6;
    double mass = 0, mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec2 p(-extent + 2 * extent * (j + 0.5) / n, -extent + 2 * extent * (i + 0.5) / n);
            const double v = s.intensity(p);
            mass += v;
            mx += v * p.x();
            my += v * p.y();
        }
    }
    s.centroid = Vec2(mx / mass, my / mass);
    return s;
}

Raster render_shape(const ShapeSpec& shape, int size, double angle, double scale) {
    if (size < 1) throw std::invalid_argument("render_shape: size must be positive");
    const double radius = kNominalRadius * size * scale;
    const double center = 0.5 * (size - 1);
    const double c = std::cos(angle), s = std::sin(angle);
    RealGrid px(size, size);
    for (int row = 0; row < size; ++row) {
        for (int col = 0; col < size; ++col) {
            double acc = 0;
            for (int sy = 0; sy < kSupersample; ++sy) {
                for (int sx = 0; sx < kSupersample; ++sx) {
                    const double x = col + (sx + 0.5) / kSupersample - 0.5 - center;
                    const double y = row + (sy + 0.5) / kSupersample - 0.5 - center;
                    // Inverse rotation maps the image point back to the shape frame.
                    const Vec2 local = Vec2(c * x + s * y, -s * x + c * y) / radius + shape.centroid;
                    acc += shape.intensity(local);
                }
            }
            px(row, col) = acc / (kSupersample * kSupersample);
        }
    }
    return Raster(std::move(px));
}

std::vector<LabeledSample> synth_dataset(int num_classes, int poses, int size, std::uint64_t seed) {
    if (num_classes < 2) throw std::invalid_argument("synth_dataset: need at least 2 classes");
    if (poses < 1) throw std::invalid_argument("synth_dataset: need at least 1 pose");
    if (size < 32) throw std::invalid_argument("synth_dataset: size must be at least 32");
    std::mt19937_64 rng(seed);
    std::vector<LabeledSample> out;
    out.reserve(static_cast<std::size_t>(num_classes) * poses);
    for (int c = 0; c < num_classes; ++c) {
        const ShapeSpec shape = random_shape(rng);
        for (int p = 0; p < poses; ++p) {
            const double deg = 360.0 * p / poses;
            char tag[32];
            std::snprintf(tag, sizeof tag, "%g", deg);
            LabeledSample s;
            s.raster = render_shape(shape, size, deg * std::numbers::pi / 180.0);
            s.class_id = c;
            s.pose_tag = tag;
            s.name = "obj" + std::to_string(c + 1) + "__" + tag;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace se2n
