#pragma once

#include "se2n/raster.hpp"

namespace se2n {

/// DC-centered 2D DFT of a zero-padded raster, scaled so that each lattice
/// value approximates the continuous transform
///   f^(lambda) = integral f(x) exp(-i <lambda, x>) dx
/// in the raster's physical coordinates (Riemann-sum convention: the DC
/// value equals average(f)). The padded lattice is square.
struct Spectrum {
    ComplexGrid values;  // row = y frequency index, col = x frequency index
    Vec2 freq_step = Vec2::Ones();

    int width() const { return static_cast<int>(values.cols()); }
    int height() const { return static_cast<int>(values.rows()); }
    int dc_col() const { return width() / 2; }
    int dc_row() const { return height() / 2; }
    Frequency frequency(int col, int row) const {
        return Frequency((col - dc_col()) * freq_step.x(), (row - dc_row()) * freq_step.y());
    }

    /// Bilinear sample; see se2n::sample.
    Complex operator()(const Frequency& lambda) const;
};

/// Zero-pads f to a square of side pad_factor * max(width, height) and
/// returns the shifted spectrum. Real input yields an exactly Hermitian
/// lattice.
Spectrum dft2_shifted(const Raster& f, int pad_factor = 2);

/// In-place 2D FFT; the inverse includes the 1/(rows*cols) factor.
void fft2_inplace(ComplexGrid& g, bool inverse = false);

/// Bilinear interpolation of the four lattice values around lambda. Lattice
/// frequencies return the stored value. Throws OutOfBandError outside the
/// sampled band.
Complex sample(const Spectrum& spec, const Frequency& lambda);

/// Counterclockwise rotation of lambda by 2*pi*k/N.
Frequency rotate_freq(const Frequency& lambda, int k, int N);

/// omega(lambda)_k = s(R_{-k} lambda), k = 0..N-1, for any sampler
/// `s : Frequency -> Complex`.
template <typename Sampler>
OmegaVector omega(const Sampler& s, const Frequency& lambda, int N) {
    OmegaVector w(N);
    for (int k = 0; k < N; ++k) w(k) = s(rotate_freq(lambda, -k, N));
    return w;
}

/// Multiplies each lattice value by exp(+i <lambda, c>): the spectrum of
/// x -> f(x + c), whose barycenter is the origin when c is f's barycenter.
Spectrum center_spectrally(const Spectrum& spec, const Vec2& c);

/// Direct evaluation of sum_x f(x) exp(-i <lambda, x>) * spacing^2.
template <typename Scalar>
Complex dtft(const Grid<Scalar>& px, const Vec2& origin, double spacing, const Frequency& lambda) {
    const Eigen::Index rows = px.rows(), cols = px.cols();
    Eigen::VectorXcd ex(cols), ey(rows);
    for (Eigen::Index c = 0; c < cols; ++c)
        ex(c) = std::polar(1.0, -lambda.x() * (origin.x() + spacing * static_cast<double>(c)));
    for (Eigen::Index r = 0; r < rows; ++r)
        ey(r) = std::polar(1.0, -lambda.y() * (origin.y() + spacing * static_cast<double>(r)));
    Eigen::VectorXcd row_sums(rows);
    if constexpr (std::is_same_v<Scalar, double>) {
        const Eigen::VectorXd re = px.matrix() * ex.real();
        const Eigen::VectorXd im = px.matrix() * ex.imag();
        row_sums.real() = re;
        row_sums.imag() = im;
    } else {
        row_sums.noalias() = px.matrix() * ex;
    }
    return spacing * spacing * (ey.array() * row_sums.array()).sum();
}

inline Complex dtft(const Raster& f, const Frequency& lambda) {
    return dtft(f.pixels, f.origin, f.spacing, lambda);
}

/// Exact transform sampler for a raster, optionally evaluated for the
/// translate x -> f(x + shift).
struct DtftSampler {
    const Raster* raster = nullptr;
    Vec2 shift = Vec2::Zero();
    Complex operator()(const Frequency& lambda) const {
        return std::polar(1.0, lambda.dot(shift)) * dtft(*raster, lambda);
    }
};

/// Sampler of the image rotated counterclockwise by 2*pi*m/N:
/// (R_m f)^(lambda) = f^(R_{-m} lambda).
template <typename Sampler>
struct RotatedSampler {
    const Sampler* base = nullptr;
    int m = 0;
    int N = 6;
    Complex operator()(const Frequency& lambda) const { return (*base)(rotate_freq(lambda, -m, N)); }
};

}  // namespace se2n
