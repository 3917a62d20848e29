#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace se2n {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;

/// Row-major 2D array; row index is y, column index is x.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealGrid = Grid<double>;
using ComplexGrid = Grid<Complex>;

/// Angular frequency (radians per unit length).
using Frequency = Vec2;

/// N-vector of spectrum samples along a discrete rotation orbit.
using OmegaVector = Eigen::VectorXcd;

class ZeroAverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutOfBandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline int mod(int a, int n) {
    const int r = a % n;
    return r < 0 ? r + n : r;
}

/// Counterclockwise rotation by 2*pi*k/N.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 2, 2> rotation(int k, int N) {
    const int kk = mod(k, N);
    Eigen::Matrix<Scalar, 2, 2> r;
    if (kk == 0) {
        r.setIdentity();
        return r;
    }
    const Scalar angle = Scalar(kTwoPi) * Scalar(kk) / Scalar(N);
    const Scalar c = std::cos(angle), s = std::sin(angle);
    r << c, -s, s, c;
    return r;
}

}  // namespace se2n
