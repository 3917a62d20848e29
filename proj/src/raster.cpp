#include "se2n/raster.hpp"

#include <algorithm>
#include <random>

namespace se2n {

Raster::Raster(RealGrid px, Vec2 org, double sp) : pixels(std::move(px)), origin(std::move(org)), spacing(sp) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("raster spacing must be positive");
    }
    if (!pixels.allFinite()) {
        throw std::invalid_argument("raster intensities must be finite");
    }
    if (!origin.allFinite()) {
        throw std::invalid_argument("raster origin must be finite");
    }
}

Raster to_grayscale(const RgbImage& rgb) {
    if (rgb.r.rows() != rgb.g.rows() || rgb.r.rows() != rgb.b.rows() || rgb.r.cols() != rgb.g.cols() ||
        rgb.r.cols() != rgb.b.cols()) {
        throw std::invalid_argument("to_grayscale: channel dimensions differ");
    }
    return Raster(0.299 * rgb.r + 0.587 * rgb.g + 0.114 * rgb.b);
}

double average(const Raster& f) { return f.pixels.sum() * f.spacing * f.spacing; }

Vec2 barycenter(const Raster& f) {
    const double mass = f.pixels.sum();
    const double tol = 1e-12 * static_cast<double>(f.pixels.size()) * 255.0;
    if (!(std::abs(mass) > tol)) {
        throw ZeroAverageError("barycenter: image average is zero");
    }
    const Eigen::ArrayXd col_sums = f.pixels.colwise().sum().transpose();
    const Eigen::ArrayXd row_sums = f.pixels.rowwise().sum();
    const double mx = (col_sums * Eigen::ArrayXd::LinSpaced(f.width(), 0, f.width() - 1)).sum();
    const double my = (row_sums * Eigen::ArrayXd::LinSpaced(f.height(), 0, f.height() - 1)).sum();
    return f.position(mx / mass, my / mass);
}

Raster add_gaussian_noise(const Raster& f, double sd, std::uint64_t seed) {
    if (!(sd >= 0.0)) throw std::invalid_argument("noise standard deviation must be non-negative");
    if (sd == 0.0) return f;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sd);
    Raster out = f;
    for (Eigen::Index i = 0; i < out.pixels.size(); ++i) {
        out.pixels.data()[i] = std::clamp(out.pixels.data()[i] + noise(rng), 0.0, 255.0);
    }
    return out;
}

namespace {

double bilinear(const RealGrid& px, double col, double row) {
    const double c0 = std::floor(col), r0 = std::floor(row);
    const double tc = col - c0, tr = row - r0;
    const auto at = [&](double c, double r) {
        if (c < 0 || r < 0 || c >= px.cols() || r >= px.rows()) return 0.0;
        return px(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    };
    return (1 - tr) * ((1 - tc) * at(c0, r0) + tc * at(c0 + 1, r0)) +
           tr * ((1 - tc) * at(c0, r0 + 1) + tc * at(c0 + 1, r0 + 1));
}

}  // namespace

Raster rotate_resampled(const Raster& f, double angle, const Vec2& center) {
    // Output pixel p takes the input value at R(-angle)(p - center) + center.
    const double c = std::cos(angle), s = std::sin(angle);
    RealGrid out(f.height(), f.width());
    for (int row = 0; row < f.height(); ++row) {
        for (int col = 0; col < f.width(); ++col) {
            const Vec2 d = f.position(col, row) - center;
            const Vec2 src = center + Vec2(c * d.x() + s * d.y(), -s * d.x() + c * d.y());
            const Vec2 idx = (src - f.origin) / f.spacing;
            out(row, col) = bilinear(f.pixels, idx.x(), idx.y());
        }
    }
    return Raster(std::move(out), f.origin, f.spacing);
}

Raster shift_pixels(const Raster& f, int dx, int dy) {
    RealGrid out = RealGrid::Zero(f.height(), f.width());
    for (int row = 0; row < f.height(); ++row) {
        const int sr = row - dy;
        if (sr < 0 || sr >= f.height()) continue;
        for (int col = 0; col < f.width(); ++col) {
            const int sc = col - dx;
            if (sc < 0 || sc >= f.width()) continue;
            out(row, col) = f.pixels(sr, sc);
        }
    }
    return Raster(std::move(out), f.origin, f.spacing);
}

}  // namespace se2n
