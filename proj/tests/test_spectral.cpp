#include "se2n/hexgrid.hpp"
#include "se2n/raster.hpp"
#include "se2n/spectral.hpp"
#include "se2n/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace se2n;

namespace {

Raster gaussian_raster(int size, double sigma, const Vec2& mu, double amp = 100.0) {
    Raster f(RealGrid::Zero(size, size));
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) f.pixels(r, c) = amp * std::exp(-(Vec2(c, r) - mu).squaredNorm() / (2 * sigma * sigma));
    return f;
}

Complex gaussian_hat(double sigma, const Vec2& mu, double amp, const Frequency& l) {
    return amp * kTwoPi * sigma * sigma * std::exp(-0.5 * sigma * sigma * l.squaredNorm()) * std::polar(1.0, -l.dot(mu));
}

// (a, b) with lambda = a*(s,0) + b*(s/2, s*sqrt(3)/2), not rounded.
Vec2 lattice_coords(const Frequency& bins, double step) {
    const double b = bins.y() / (std::sqrt(3.0) / 2.0 * step);
    return Vec2(bins.x() / step - 0.5 * b, b);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("dft2_shifted basics") {
    const Spectrum z = dft2_shifted(Raster(RealGrid::Zero(8, 8)), 1);
    CHECK(z.values.abs().maxCoeff() == 0.0);

    const Spectrum one = dft2_shifted(Raster(RealGrid::Ones(8, 8)), 1);
    CHECK(one.width() == 8);
    CHECK(std::abs(one.values(one.dc_row(), one.dc_col()) - Complex(64, 0)) < 1e-12);
    ComplexGrid rest = one.values;
    rest(one.dc_row(), one.dc_col()) = 0;
    CHECK(rest.abs().maxCoeff() < 1e-12);

    // DC equals the average, with padding and non-unit spacing.
    std::mt19937_64 rng(2);
    const Raster shape = render_shape(random_shape(rng), 40, 0.2, 0.8);
    Raster scaled = shape;
    scaled.spacing = 0.5;
    const Spectrum s = dft2_shifted(scaled, 2);
    CHECK(s.width() == 80);
    CHECK(s.freq_step.x() == doctest::Approx(kTwoPi / (80 * 0.5)));
    CHECK(std::abs(s.values(s.dc_row(), s.dc_col()) - average(scaled)) < 1e-9 * average(scaled));
}

TEST_CASE("sampled Gaussian matches its closed-form transform") {
    for (double sigma : {3.0, 4.5}) {
        const Vec2 mu(30.3, 33.7);
        const Raster f = gaussian_raster(64, sigma, mu);
        const Spectrum s = dft2_shifted(f, 2);
        double worst = 0;
        for (int row = s.dc_row() - 12; row <= s.dc_row() + 12; ++row)
            for (int col = s.dc_col() - 12; col <= s.dc_col() + 12; ++col) {
                const Complex exact = gaussian_hat(sigma, mu, 100.0, s.frequency(col, row));
                worst = std::max(worst, std::abs(s.values(row, col) - exact) / std::abs(exact));
            }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("Parseval fixes the normalization") {
    std::mt19937_64 rng(5);
    Raster f = render_shape(random_shape(rng), 48, 1.0, 0.8);
    f.spacing = 0.75;
    const Spectrum s = dft2_shifted(f, 2);
    const double space = f.pixels.square().sum() * f.spacing * f.spacing;
    const double freq = s.values.abs2().sum() * s.freq_step.x() * s.freq_step.y() / (kTwoPi * kTwoPi);
    CHECK(std::abs(space - freq) <= 1e-9 * space);
}

TEST_CASE("conjugate symmetry of real input") {
    std::mt19937_64 rng(6);
    const Spectrum s = dft2_shifted(render_shape(random_shape(rng), 64, 0.4), 2);
    for (int row = 1; row < s.height(); ++row)
        for (int col = 1; col < s.width(); ++col) {
            const Frequency l = s.frequency(col, row);
            CHECK(sample(s, -l) == std::conj(sample(s, l)));
        }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const Frequency l(u(rng), u(rng));
        CHECK(std::abs(sample(s, -l) - std::conj(sample(s, l))) <= 1e-12 * std::abs(sample(s, l)) + 1e-12);
    }
}

TEST_CASE("bilinear sampling") {
    std::mt19937_64 rng(7);
    const Spectrum s = dft2_shifted(render_shape(random_shape(rng), 32, 0.0), 2);
    const Frequency on = s.frequency(40, 29);
    CHECK(sample(s, on) == s.values(29, 40));
    const Frequency mid = 0.5 * (s.frequency(40, 29) + s.frequency(41, 29));
    CHECK(std::abs(sample(s, mid) - 0.5 * (s.values(29, 40) + s.values(29, 41))) < 1e-12);
    CHECK_THROWS_AS(sample(s, Frequency(4.0, 0.0)), OutOfBandError);
    CHECK_THROWS_AS(sample(s, Frequency(0.0, -3.3)), OutOfBandError);
}

TEST_CASE("off-grid samples against the direct DTFT") {
    const Raster f = [] {
        Raster g = gaussian_raster(64, 5.0, Vec2(28, 35));
        g.pixels += gaussian_raster(64, 3.0, Vec2(38, 26), 60.0).pixels;
        g.origin = -barycenter(g);  // bilinear sampling assumes a centered spectrum
        return g;
    }();
    const Spectrum s = dft2_shifted(f, 2);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    Eigen::VectorXcd a(300), b(300);
    for (int t = 0; t < 300; ++t) {
        const Frequency l(u(rng), u(rng));
        a(t) = dtft(f, l);
        b(t) = sample(s, l);
    }
    CHECK((a - b).norm() / a.norm() <= 0.02);
}

TEST_CASE("rotate_freq") {
    const Frequency e(1, 0);
    CHECK(rotate_freq(e, 0, 6) == e);
    CHECK((rotate_freq(e, 1, 6) - Frequency(0.5, std::sqrt(3.0) / 2)).norm() < 1e-15);
    CHECK((rotate_freq(e, 3, 6) - Frequency(-1, 0)).norm() < 1e-15);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int N : {3, 4, 6, 7})
        for (int k = 0; k < N; ++k) {
            const Frequency l(u(rng), u(rng));
            CHECK((rotate_freq(rotate_freq(l, k, N), N - k, N) - l).norm() <= 1e-12);
        }
}

TEST_CASE("omega vectors") {
    // A pixel-centered Gaussian has an (alias-free to double precision) radial DTFT.
    Raster g = gaussian_raster(64, 4.0, Vec2(32, 32));
    g.origin = Vec2(-32, -32);
    const DtftSampler exact{&g};
    for (double r : {0.05, 0.2, 0.35}) {
        const OmegaVector w = omega(exact, Frequency(r * std::cos(0.3), r * std::sin(0.3)), 6);
        CHECK((w.array() - w(0)).abs().maxCoeff() <= 1e-12 * std::abs(w(0)));
    }

    const Spectrum zero = dft2_shifted(Raster(RealGrid::Zero(16, 16)), 2);
    CHECK(omega(zero, Frequency(0.3, 0.1), 6).norm() == 0.0);

    Raster f = gaussian_raster(64, 4.0, Vec2(25, 36));
    f.pixels += gaussian_raster(64, 6.0, Vec2(36, 30), 70.0).pixels;
    f.origin = -barycenter(f);
    const Spectrum s = dft2_shifted(f, 2);
    const Frequency l(0.2, 0.07);
    const OmegaVector w = omega(s, l, 6);
    OmegaVector direct(6);
    for (int k = 0; k < 6; ++k) direct(k) = dtft(f, rotate_freq(l, -k, 6));
    CHECK((w - direct).norm() / direct.norm() <= 0.02);

    // Real input: entries at -lambda are conjugates; for N even w lies in X.
    const OmegaVector wm = omega(s, -l, 6);
    CHECK((wm - w.conjugate()).norm() <= 1e-12 * w.norm());
    for (int h = 0; h < 6; ++h) CHECK(std::abs(w(h) - std::conj(w((h + 3) % 6))) <= 1e-12 * w.norm());
}

TEST_CASE("spectral centering") {
    std::mt19937_64 rng(12);
    const Raster f = shift_pixels(render_shape(random_shape(rng), 64, 0.7, 0.7), 3, -2);
    const Spectrum s = dft2_shifted(f, 2);

    const Spectrum same = center_spectrally(s, Vec2::Zero());
    CHECK((same.values == s.values).all());

    const Vec2 c = barycenter(f);
    const Spectrum centered = center_spectrally(s, c);
    CHECK((centered.values.abs() - s.values.abs()).abs().maxCoeff() <= 1e-9 * s.values.abs().maxCoeff());

    // Sign check: the centered spectrum belongs to x -> f(x + c), whose barycenter is 0.
    const Raster moved(f.pixels, f.origin - c, f.spacing);
    CHECK(barycenter(moved).norm() <= 1e-9);
    const Spectrum direct = dft2_shifted(moved, 2);
    CHECK((direct.values - centered.values).abs().maxCoeff() <= 1e-9 * s.values.abs().maxCoeff());

    // Integer shift then centering equals centering the original.
    const Raster g = shift_pixels(f, -5, 4);
    const Spectrum cg = center_spectrally(dft2_shifted(g, 2), barycenter(g));
    CHECK((cg.values - centered.values).matrix().norm() <= 1e-9 * centered.values.matrix().norm());
}

TEST_CASE("hexagonal grid geometry") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    const int N = grid.config.N;
    for (const auto& p : grid.points) {
        CHECK(p.bins.norm() > 0);
        const double angle = std::atan2(p.bins.y(), p.bins.x());
        CHECK(angle >= 0.0);
        CHECK(angle < kTwoPi / N);
        CHECK(std::abs(p.bins.x()) <= 8.0 + 1e-9);
        CHECK(std::abs(p.bins.y()) <= 8.0 + 1e-9);
        for (int k = 0; k < N; ++k) {
            const Vec2 ab = lattice_coords(rotate_freq(p.bins, -k, N), grid.config.step_bins);
            CHECK((ab - ab.array().round().matrix()).norm() <= 1e-12);
        }
    }
    // No two points share an orbit.
    for (std::size_t i = 0; i < grid.points.size(); ++i)
        for (std::size_t j = i + 1; j < grid.points.size(); ++j)
            for (int k = 0; k < N; ++k)
                CHECK((rotate_freq(grid.points[i].bins, k, N) - grid.points[j].bins).norm() > 1e-6);
    // Sorted by radius, then angle.
    for (std::size_t i = 1; i < grid.points.size(); ++i)
        CHECK(grid.points[i - 1].bins.norm() <= grid.points[i].bins.norm() + 1e-12);
    for (const auto& [i, j] : grid.pairs) {
        CHECK(i <= j);
        CHECK(in_window(grid.sum(i, j).bins, grid.config.window_bins));
    }
    CHECK(std::is_sorted(grid.pairs.begin(), grid.pairs.end()));
}

TEST_CASE("hexagonal grid golden manifests") {
    struct Golden {
        int window;
        std::size_t points, pairs, ordered;
        const char* hash;
    };
    const Golden golden[] = {
        {16, 55, 272, 530, "c95050a8392e374fd14d0c7227891f31a086da2db3233e1ba17983a15b77c29d"},
        {8, 14, 17, 30, "5bf17a15"},
        {12, 30, 83, 158, "dd6340fa"},
    };
    for (const auto& g : golden) {
        GridConfig cfg;
        cfg.window_bins = g.window;
        const HexGrid grid = build_hex_grid(cfg);
        CHECK(grid.points.size() == g.points);
        CHECK(grid.pairs.size() == g.pairs);
        CHECK(grid.ordered_pairs.size() == g.ordered);
        CHECK(grid.manifest_hash.rfind(g.hash, 0) == 0);
        CHECK(build_hex_grid(cfg).manifest_hash == grid.manifest_hash);
    }
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    GridConfig tiny;
    tiny.window_bins = 1;
    tiny.step_bins = 2.0;
    CHECK_THROWS_AS(build_hex_grid(tiny), std::invalid_argument);
}

TEST_CASE("other rotation orders use the angular slice") {
    for (int N : {4, 5, 8}) {
        GridConfig cfg;
        cfg.N = N;
        const HexGrid grid = build_hex_grid(cfg);
        for (const auto& p : grid.points) {
            const double angle = std::atan2(p.bins.y(), p.bins.x());
            CHECK(angle >= -1e-12);
            CHECK(angle < kTwoPi / N);
        }
    }
}

}  // TEST_SUITE
