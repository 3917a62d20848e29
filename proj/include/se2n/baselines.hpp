#pragma once

#include "se2n/raster.hpp"

#include <Eigen/Core>

#include <vector>

namespace se2n {

/// Geometric moments up to order 3, indexed (p, q); coordinates are
/// continuous (pixel positions) and each pixel weighs spacing^2.
struct MomentSet {
    Eigen::Matrix4d raw = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d central = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d normalized = Eigen::Matrix4d::Zero();  // u_pq / u_00^(1 + (p+q)/2)
    Eigen::Matrix<double, 7, 1> hu = Eigen::Matrix<double, 7, 1>::Zero();
};

/// Throws ZeroAverageError for a zero-mass image.
MomentSet moments(const Raster& f);
Eigen::Matrix<double, 7, 1> hu_moments(const Raster& f);
/// sign(h) * log|h| per invariant (0 stays 0).
Eigen::VectorXd hu_features(const Raster& f);

struct ZernikeMoment {
    int m = 0, n = 0;
    Complex z;
};

struct ZernikeSet {
    int m_max = 8;
    Vec2 center = Vec2::Zero();
    double radius = 1.0;
    std::vector<ZernikeMoment> moments;  // m ascending, then n ascending
};

/// Radial polynomial R_mn(r); requires m - |n| even and |n| <= m.
double zernike_radial(int m, int n, double r);

/// Z_mn = (m+1)/pi * sum over pixels in the unit disk of I conj(V_mn) dA.
/// The disk is the raster's inscribed circle moved to the barycenter.
ZernikeSet zernike_moments(const Raster& f, int m_max = 8);
/// Same on a caller-chosen disk (continuous center and radius).
ZernikeSet zernike_moments(const Raster& f, int m_max, const Vec2& center, double radius);
/// |Z_mn| for n >= 0.
Eigen::VectorXd zernike_features(const Raster& f, int m_max = 8);

struct AfmtSet {
    double sigma = 0.5;
    int u_max = 4;
    std::vector<double> v;
    ComplexGrid M;  // row u + u_max, column index into v
    Complex at(int u, std::size_t vi) const { return M(u + u_max, static_cast<Eigen::Index>(vi)); }
};

struct AfmtConfig {
    double sigma = 0.5;
    int u_max = 4;
    int v_samples = 9;
    double v_max = 4.0;
    int angular = 256;
    int radial = 128;
};

/// Analytical Fourier-Mellin transform of r^sigma I(r, theta) about the
/// barycenter, integrated on a bilinear log-polar resampling. The disk
/// inside the innermost ring is treated as constant.
AfmtSet afmt(const Raster& f, const AfmtConfig& config = {});
/// |M(u,v)| followed by (re, im) of
/// M(0,0)^((-sigma + i v)/sigma) exp(-i u arg M(1,0)) M(u,v).
Eigen::VectorXd afmt_features(const Raster& f, const AfmtConfig& config = {});

}  // namespace se2n
