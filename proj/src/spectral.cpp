#include "se2n/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <vector>

namespace se2n {

Complex Spectrum::operator()(const Frequency& lambda) const { return sample(*this, lambda); }

Spectrum dft2_shifted(const Raster& f, int pad_factor) {
    if (pad_factor < 1) throw std::invalid_argument("dft2_shifted: pad factor must be >= 1");
    const int side = pad_factor * std::max(f.width(), f.height());
    if (side == 0) throw std::invalid_argument("dft2_shifted: empty raster");

    ComplexGrid work = ComplexGrid::Zero(side, side);
    work.topLeftCorner(f.height(), f.width()) = f.pixels.cast<Complex>();

    Eigen::FFT<double> fft;
    std::vector<Complex> in(static_cast<std::size_t>(side)), out;
    for (int r = 0; r < f.height(); ++r) {  // padded rows are zero
        for (int c = 0; c < side; ++c) in[static_cast<std::size_t>(c)] = work(r, c);
        fft.fwd(out, in);
        for (int c = 0; c < side; ++c) work(r, c) = out[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < side; ++c) {
        for (int r = 0; r < side; ++r) in[static_cast<std::size_t>(r)] = work(r, c);
        fft.fwd(out, in);
        for (int r = 0; r < side; ++r) work(r, c) = out[static_cast<std::size_t>(r)];
    }

    // Real input: enforce X[-k] = conj(X[k]) exactly.
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const int mr = (side - r) % side, mc = (side - c) % side;
            if (std::make_pair(r, c) > std::make_pair(mr, mc)) continue;
            const Complex sym = 0.5 * (work(r, c) + std::conj(work(mr, mc)));
            work(r, c) = sym;
            work(mr, mc) = std::conj(sym);
        }
    }

    Spectrum spec;
    spec.values.resize(side, side);
    const double step = kTwoPi / (side * f.spacing);
    spec.freq_step = Vec2(step, step);
    const double area = f.spacing * f.spacing;
    const int dc = side / 2;
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const int v = row - dc, u = col - dc;
            const Frequency lambda(u * step, v * step);
            const Complex phase = std::polar(1.0, -lambda.dot(f.origin));
            spec.values(row, col) = area * (phase * work(mod(v, side), mod(u, side)));
        }
    }
    return spec;
}

void fft2_inplace(ComplexGrid& g, bool inverse) {
    Eigen::FFT<double> fft;
    const Eigen::Index rows = g.rows(), cols = g.cols();
    std::vector<Complex> in, out;
    auto run = [&] { inverse ? fft.inv(out, in) : fft.fwd(out, in); };
    in.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) in[static_cast<std::size_t>(c)] = g(r, c);
        run();
        for (Eigen::Index c = 0; c < cols; ++c) g(r, c) = out[static_cast<std::size_t>(c)];
    }
    in.resize(static_cast<std::size_t>(rows));
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) in[static_cast<std::size_t>(r)] = g(r, c);
        run();
        for (Eigen::Index r = 0; r < rows; ++r) g(r, c) = out[static_cast<std::size_t>(r)];
    }
}

namespace {

// Snaps coordinates within 1e-9 bins of an integer so lattice frequencies
// reproduce stored values exactly.
double snap(double x) {
    const double r = std::round(x);
    return std::abs(x - r) < 1e-9 ? r : x;
}

}  // namespace

Complex sample(const Spectrum& spec, const Frequency& lambda) {
    const double x = snap(lambda.x() / spec.freq_step.x() + spec.dc_col());
    const double y = snap(lambda.y() / spec.freq_step.y() + spec.dc_row());
    const int w = spec.width(), h = spec.height();
    if (!(x >= 0 && y >= 0 && x <= w - 1 && y <= h - 1)) {
        throw OutOfBandError("sample: frequency outside the sampled band");
    }
    const int c0 = std::min(static_cast<int>(x), w - 2);
    const int r0 = std::min(static_cast<int>(y), h - 2);
    const double tx = x - c0, ty = y - r0;
    const auto& v = spec.values;
    if (tx == 0.0 && ty == 0.0) return v(r0, c0);
    return (1 - ty) * ((1 - tx) * v(r0, c0) + tx * v(r0, c0 + 1)) +
           ty * ((1 - tx) * v(r0 + 1, c0) + tx * v(r0 + 1, c0 + 1));
}

Frequency rotate_freq(const Frequency& lambda, int k, int N) {
    if (N < 1) throw std::invalid_argument("rotate_freq: N must be positive");
    if (mod(k, N) == 0) return lambda;
    return rotation(k, N) * lambda;
}

Spectrum center_spectrally(const Spectrum& spec, const Vec2& c) {
    Spectrum out = spec;
    for (int row = 0; row < spec.height(); ++row) {
        for (int col = 0; col < spec.width(); ++col) {
            out.values(row, col) *= std::polar(1.0, spec.frequency(col, row).dot(c));
        }
    }
    return out;
}

}  // namespace se2n
