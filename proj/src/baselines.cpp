#include "se2n/baselines.hpp"

#include <cmath>

namespace se2n {

MomentSet moments(const Raster& f) {
    const Vec2 c = barycenter(f);
    MomentSet m;
    const double area = f.spacing * f.spacing;
    for (int r = 0; r < f.height(); ++r) {
        for (int col = 0; col < f.width(); ++col) {
            const double v = f.pixels(r, col) * area;
            if (v == 0) continue;
            const Vec2 x = f.position(col, r);
            const Vec2 d = x - c;
            double xp = 1, dxp = 1;
            for (int p = 0; p < 4; ++p) {
                double yq = 1, dyq = 1;
                for (int q = 0; p + q < 4; ++q) {
                    m.raw(p, q) += v * xp * yq;
                    m.central(p, q) += v * dxp * dyq;
                    yq *= x.y();
                    dyq *= d.y();
                }
                xp *= x.x();
                dxp *= d.x();
            }
        }
    }
    const double u00 = m.central(0, 0);
    for (int p = 0; p < 4; ++p)
        for (int q = 0; p + q < 4; ++q) m.normalized(p, q) = m.central(p, q) / std::pow(u00, 1.0 + 0.5 * (p + q));

    const auto& n = m.normalized;
    const double n20 = n(2, 0), n02 = n(0, 2), n11 = n(1, 1);
    const double n30 = n(3, 0), n03 = n(0, 3), n21 = n(2, 1), n12 = n(1, 2);
    const double a = n30 + n12, b = n21 + n03;
    m.hu(0) = n20 + n02;
    m.hu(1) = (n20 - n02) * (n20 - n02) + 4 * n11 * n11;
    m.hu(2) = (n30 - 3 * n12) * (n30 - 3 * n12) + (3 * n21 - n03) * (3 * n21 - n03);
    m.hu(3) = a * a + b * b;
    m.hu(4) = (n30 - 3 * n12) * a * (a * a - 3 * b * b) + (3 * n21 - n03) * b * (3 * a * a - b * b);
    m.hu(5) = (n20 - n02) * (a * a - b * b) + 4 * n11 * a * b;
    m.hu(6) = (3 * n21 - n03) * a * (a * a - 3 * b * b) - (n30 - 3 * n12) * b * (3 * a * a - b * b);
    return m;
}

Eigen::Matrix<double, 7, 1> hu_moments(const Raster& f) { return moments(f).hu; }

Eigen::VectorXd hu_features(const Raster& f) {
    const auto h = hu_moments(f);
    Eigen::VectorXd out(7);
    for (int i = 0; i < 7; ++i) out(i) = h(i) == 0 ? 0.0 : (h(i) > 0 ? 1.0 : -1.0) * std::log(std::abs(h(i)));
    return out;
}

namespace {

// Coefficients of R_mn, highest power first (powers m, m-2, ...).
std::vector<double> radial_coefficients(int m, int n) {
    n = std::abs(n);
    if (n > m || (m - n) % 2 != 0) throw std::invalid_argument("zernike_radial: invalid (m, n)");
    std::vector<double> c;
    for (int s = 0; s <= (m - n) / 2; ++s) {
        const double num = std::tgamma(m - s + 1.0);
        const double den = std::tgamma(s + 1.0) * std::tgamma((m + n) / 2 - s + 1.0) * std::tgamma((m - n) / 2 - s + 1.0);
        c.push_back(((s % 2) ? -1.0 : 1.0) * std::round(num / den));
    }
    return c;
}

double eval_radial(const std::vector<double>& c, int m, double r) {
    double acc = 0;
    for (std::size_t s = 0; s < c.size(); ++s) acc += c[s] * std::pow(r, m - 2 * static_cast<int>(s));
    return acc;
}

}  // namespace

double zernike_radial(int m, int n, double r) { return eval_radial(radial_coefficients(m, n), m, r); }

ZernikeSet zernike_moments(const Raster& f, int m_max, const Vec2& center, double radius) {
    if (m_max < 0) throw std::invalid_argument("zernike_moments: m_max must be >= 0");
    if (!(radius > 0)) throw std::invalid_argument("zernike_moments: radius must be positive");
    ZernikeSet set;
    set.m_max = m_max;
    set.center = center;
    set.radius = radius;
    for (int m = 0; m <= m_max; ++m)
        for (int n = -m; n <= m; n += 2) set.moments.push_back({m, n, Complex(0.0)});

    const double dA = (f.spacing / radius) * (f.spacing / radius);
    std::vector<std::vector<double>> coeff;
    for (const auto& z : set.moments) coeff.push_back(radial_coefficients(z.m, z.n));
    for (int r = 0; r < f.height(); ++r) {
        for (int c = 0; c < f.width(); ++c) {
            const double v = f.pixels(r, c);
            if (v == 0) continue;
            const Vec2 p = (f.position(c, r) - center) / radius;
            const double rho = p.norm();
            if (rho > 1.0) continue;
            const double theta = std::atan2(p.y(), p.x());
            for (std::size_t i = 0; i < set.moments.size(); ++i) {
                auto& z = set.moments[i];
                z.z += v * eval_radial(coeff[i], z.m, rho) * std::polar(1.0, -z.n * theta);
            }
        }
    }
    for (auto& z : set.moments) z.z *= (z.m + 1) / std::numbers::pi * dA;
    return set;
}

ZernikeSet zernike_moments(const Raster& f, int m_max) {
    const double radius = 0.5 * std::min(f.width(), f.height()) * f.spacing;
    return zernike_moments(f, m_max, barycenter(f), radius);
}

Eigen::VectorXd zernike_features(const Raster& f, int m_max) {
    const ZernikeSet set = zernike_moments(f, m_max);
    std::vector<double> out;
    for (const auto& z : set.moments)
        if (z.n >= 0) out.push_back(std::abs(z.z));
    return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

namespace {

double bilinear(const Raster& f, const Vec2& x) {
    const double cx = (x.x() - f.origin.x()) / f.spacing, cy = (x.y() - f.origin.y()) / f.spacing;
    const int c0 = static_cast<int>(std::floor(cx)), r0 = static_cast<int>(std::floor(cy));
    const double tx = cx - c0, ty = cy - r0;
    auto px = [&](int c, int r) {
        return (c < 0 || r < 0 || c >= f.width() || r >= f.height()) ? 0.0 : f.pixels(r, c);
    };
    return (1 - ty) * ((1 - tx) * px(c0, r0) + tx * px(c0 + 1, r0)) +
           ty * ((1 - tx) * px(c0, r0 + 1) + tx * px(c0 + 1, r0 + 1));
}

}  // namespace

AfmtSet afmt(const Raster& f, const AfmtConfig& config) {
    if (!(config.sigma > 0)) throw std::invalid_argument("afmt: sigma must be positive");
    if (config.u_max < 0 || config.v_samples < 1 || config.angular < 1 || config.radial < 1) {
        throw std::invalid_argument("afmt: invalid sampling configuration");
    }
    AfmtSet set;
    set.sigma = config.sigma;
    set.u_max = config.u_max;
    for (int i = 0; i < config.v_samples; ++i) {
        set.v.push_back(config.v_samples == 1 ? 0.0
                                              : -config.v_max + 2 * config.v_max * i / (config.v_samples - 1));
    }
    const int U = 2 * config.u_max + 1, V = config.v_samples;
    set.M = ComplexGrid::Zero(U, V);
    if ((f.pixels == 0).all()) return set;

    const Vec2 c = barycenter(f);
    const double r_max = 0.5 * std::min(f.width(), f.height()) * f.spacing;
    const double r_min = 0.25 * f.spacing;
    const double drho = std::log(r_max / r_min) / config.radial;
    const double dtheta = kTwoPi / config.angular;

    // Angular Fourier coefficients per ring: a_u(rho) = (1/2pi) sum I e^{-iu theta} dtheta.
    ComplexGrid ring(config.radial, U);
    for (int j = 0; j < config.radial; ++j) {
        const double r = r_min * std::exp((j + 0.5) * drho);
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(U);
        for (int i = 0; i < config.angular; ++i) {
            const double theta = i * dtheta;
            const double val = bilinear(f, c + r * Vec2(std::cos(theta), std::sin(theta)));
            if (val == 0) continue;
            for (int u = -config.u_max; u <= config.u_max; ++u) acc(u + config.u_max) += val * std::polar(1.0, -u * theta);
        }
        ring.row(j) = (acc * (dtheta / kTwoPi)).transpose();
    }
    const double center_value = bilinear(f, c);
    for (std::size_t vi = 0; vi < set.v.size(); ++vi) {
        const Complex e(config.sigma, -set.v[vi]);  // r^(sigma - i v)
        for (int u = 0; u < U; ++u) {
            Complex acc = 0;
            for (int j = 0; j < config.radial; ++j) {
                const double rho = std::log(r_min) + (j + 0.5) * drho;
                acc += ring(j, u) * std::exp(e * rho);
            }
            acc *= drho;
            if (u == config.u_max) acc += center_value * std::exp(e * std::log(r_min)) / e;
            set.M(u, static_cast<Eigen::Index>(vi)) = acc;
        }
    }
    return set;
}

Eigen::VectorXd afmt_features(const Raster& f, const AfmtConfig& config) {
    const AfmtSet set = afmt(f, config);
    const int U = 2 * set.u_max + 1;
    const auto V = static_cast<Eigen::Index>(set.v.size());
    Eigen::VectorXd out(U * V * 3);
    Eigen::Index at = 0;
    for (int u = 0; u < U; ++u)
        for (Eigen::Index vi = 0; vi < V; ++vi) out(at++) = std::abs(set.M(u, vi));

    // M(0, v = 0) is real and positive for a nonnegative image; use the
    // sample closest to v = 0.
    Eigen::Index v0 = 0;
    for (Eigen::Index vi = 1; vi < V; ++vi)
        if (std::abs(set.v[std::size_t(vi)]) < std::abs(set.v[std::size_t(v0)])) v0 = vi;
    const double m00 = std::abs(set.M(set.u_max, v0));
    const double phase1 = set.u_max >= 1 ? std::arg(set.M(set.u_max + 1, v0)) : 0.0;
    for (int u = 0; u < U; ++u) {
        for (Eigen::Index vi = 0; vi < V; ++vi) {
            Complex z = 0;
            if (m00 > 0) {
                const Complex expo = Complex(-set.sigma, set.v[std::size_t(vi)]) / set.sigma;
                z = std::exp(expo * std::log(m00)) * std::polar(1.0, -(u - set.u_max) * phase1) * set.M(u, vi);
            }
            out(at++) = z.real();
            out(at++) = z.imag();
        }
    }
    return out;
}

}  // namespace se2n
