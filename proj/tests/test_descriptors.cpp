#include "se2n/descriptors.hpp"
#include "se2n/oracle.hpp"
#include "se2n/pipeline.hpp"
#include "se2n/raster.hpp"
#include "se2n/synth.hpp"

#include <doctest.h>

#include <random>

using namespace se2n;

namespace {

constexpr int N = 6;

// f(x) = f0(x + c) for a centered copy: raster origin moved by -c.
Raster centered(const Raster& f) { return Raster(f.pixels, f.origin - barycenter(f), f.spacing); }

Raster shape_image(std::uint64_t seed, int size = 64, double angle = 0.3) {
    std::mt19937_64 rng(seed);
    return render_shape(random_shape(rng), size, angle, 0.7);
}

}  // namespace

TEST_SUITE("descriptors") {

TEST_CASE("kind and encoding names") {
    CHECK(parse_kind("RPS+BS") == Kind::RPS_BS);
    CHECK(parse_kind("rps_bs") == Kind::RPS_BS);
    CHECK(parse_kind("rbs") == Kind::RBS);
    CHECK(parse_kind("Zernike") == Kind::ZERNIKE);
    CHECK(to_string(Kind::RPS_BS) == "RPS+BS");
    CHECK_THROWS_AS(parse_kind("SIFT"), std::invalid_argument);
    CHECK(parse_encoding("modulus") == Encoding::Modulus);
    CHECK_THROWS_AS(parse_encoding("polar"), std::invalid_argument);
    CHECK(is_spectral(Kind::CYCLIC_BS));
    CHECK_FALSE(is_spectral(Kind::HU));
}

TEST_CASE("power spectrum") {
    CHECK(ps_fast(OmegaVector::Zero(N)) == 0.0);
    const Complex c(2.0, -1.5);
    CHECK(ps_fast(OmegaVector::Constant(N, c)) == doctest::Approx(N * std::norm(c)).epsilon(1e-15));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        OmegaVector w(N);
        for (int k = 0; k < N; ++k) w(k) = {g(rng), g(rng)};
        CHECK(rps_fast(cyclic_shift(w, 0), w) == Complex(ps_fast(w), 0.0));
        CHECK(rps_fast(w, w).imag() == 0.0);
    }
}

TEST_CASE("cyclic shift realizes R_h on omega") {
    const Raster f = shape_image(2);
    const DtftSampler s{&f};
    const Frequency l(0.21, 0.08);
    const OmegaVector w = omega(s, l, N);
    for (int h = 0; h < N; ++h) CHECK((cyclic_shift(w, h) - omega(s, rotate_freq(l, h, N), N)).norm() <= 1e-12 * w.norm());
}

TEST_CASE("radial spectra") {
    auto radial = [](const Frequency& l) { return Complex(3.0 * std::exp(-2.0 * l.squaredNorm()), 0.0); };
    const Frequency l(0.3, 0.2);
    const OmegaVector w = omega(radial, l, N);
    for (int h = 0; h < N; ++h)
        CHECK(std::abs(rps_fast(cyclic_shift(w, h), w) - N * std::norm(radial(l))) <= 1e-12 * N * std::norm(radial(l)));
}

TEST_CASE("bispectrum") {
    const OmegaVector z = OmegaVector::Zero(N), one = OmegaVector::Ones(N);
    CHECK(bs_fast(z, one, one) == Complex(0.0));
    CHECK(bs_fast(one, z, one) == Complex(0.0));
    CHECK(bs_fast(one, one, z) == Complex(0.0));

    const Raster f = centered(shape_image(3));
    const DtftSampler s{&f};
    const Frequency l1(0.2, 0.05), l2(-0.07, 0.18);
    const OmegaVector w1 = omega(s, l1, N), w2 = omega(s, l2, N), w12 = omega(s, l1 + l2, N);
    CHECK(bs_fast(w1, w2, w12) == bs_fast(w2, w1, w12));
    CHECK(rbs_fast(cyclic_shift(w1, 0), w2, w12) == bs_fast(w1, w2, w12));

    // BS determines PS: bs(l1, eps l2) / avg -> ps(l1).
    const double avg = average(f);
    const Frequency small = 1e-3 * l2.normalized();
    const Complex lim = bs_fast(w1, omega(s, small, N), omega(s, l1 + small, N)) / avg;
    CHECK(std::abs(lim - ps_fast(w1)) <= 1e-2 * ps_fast(w1));

    // Both frequencies small: N avg^3.
    const Frequency t1 = 1e-3 * l1.normalized(), t2 = 1e-3 * l2.normalized();
    for (int h = 0; h < N; ++h) {
        const Complex v = rbs_fast(omega(s, rotate_freq(t1, h, N), N), omega(s, t2, N), omega(s, t1 + t2, N));
        CHECK(std::abs(v - N * avg * avg * avg) <= 1e-2 * N * avg * avg * avg);
    }
}

TEST_CASE("cyclic lift quantities") {
    const Raster f = centered(shape_image(4));
    const DtftSampler s{&f};
    const Frequency l1(0.15, 0.1), l2(0.05, -0.2);
    const OmegaVector w1 = omega(s, l1, N), w2 = omega(s, l2, N), w12 = omega(s, l1 + l2, N);
    CHECK(std::abs(cyclic_bs(s, l1, l2, 0, 0, N) - rbs_fast(w1, w2, w12)) <= 1e-12 * std::abs(rbs_fast(w1, w2, w12)));
    // k = 0, general h: the third argument is l1 + R_h l2.
    for (int h = 1; h < N; ++h) {
        const Complex expect = bs_fast(cyclic_shift(w1, h), w2, omega(s, l1 + rotate_freq(l2, h, N), N));
        CHECK(std::abs(cyclic_bs(s, l1, l2, 0, h, N) - expect) <= 1e-12 * std::abs(expect));
    }
    const Raster zero(RealGrid::Zero(16, 16));
    CHECK(cyclic_bs(DtftSampler{&zero}, l1, l2, 2, 3, N) == Complex(0.0));

    const HexGrid grid = build_hex_grid(GridConfig{});
    for (Encoding e : {Encoding::ReIm, Encoding::Modulus})
        CHECK(feature_length(Kind::CYCLIC_BS, grid, e) == std::size_t(N) * feature_length(Kind::RBS, grid, e));
}

TEST_CASE("matrix definitions") {
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(N, N);
    CHECK(ps_matrix(Z).norm() == 0.0);
    CHECK(rps_matrix(Z, Z).norm() == 0.0);
    CHECK(bs_matrix(Z, Z, Eigen::MatrixXcd::Zero(N * N, N * N)).norm() == 0.0);
    CHECK_THROWS_AS(bs_matrix(Z, Z, Eigen::MatrixXcd::Zero(N, N)), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd P(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) P(i, j) = {g(rng), g(rng)};
    const Eigen::MatrixXcd S = ps_matrix(P);
    CHECK((S - S.adjoint()).norm() <= 1e-12 * S.norm());
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(S).eigenvalues().minCoeff() >= -1e-12 * S.norm());

    const Eigen::MatrixXcd T = Eigen::MatrixXcd::Random(N, N);
    CHECK(std::abs(scalar_factor((Complex(2, -3) * T).eval(), T) - Complex(2, -3)) <= 1e-12);
}

TEST_CASE("fast invariants against the lifted matrix definitions") {
    const CheckReport rep = run_oracle_suite(3, 8);
    for (const auto& r : rep.rows) {
        INFO(r.identity);
        CHECK(r.residual <= 1e-8);
    }
}

TEST_CASE("feature lengths on the default grid") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    CHECK(feature_length(Kind::PS, grid, Encoding::ReIm) == 55);
    CHECK(feature_length(Kind::RPS, grid, Encoding::ReIm) == 660);
    CHECK(feature_length(Kind::BS, grid, Encoding::ReIm) == 544);
    CHECK(feature_length(Kind::RBS, grid, Encoding::ReIm) == 6360);
    CHECK(feature_length(Kind::RPS_BS, grid, Encoding::ReIm) == 1204);
    CHECK(feature_length(Kind::RBS, grid, Encoding::Modulus) == 3180);
    CHECK(feature_length(Kind::PS, grid, Encoding::Modulus) == 55);

    const Raster f = shape_image(6, 128);
    DescriptorConfig cfg;
    for (Kind k : {Kind::PS, Kind::RPS, Kind::BS, Kind::RBS, Kind::RPS_BS}) {
        const FeatureVector fv = extract_features(f, grid, cfg, k);
        CHECK(std::size_t(fv.values.size()) == feature_length(k, grid, cfg.encoding));
        CHECK(fv.manifest_hash == grid.manifest_hash);
        CHECK(fv.kind == k);
    }
    const FeatureVector both = extract_features(f, grid, cfg, Kind::RPS_BS);
    const FeatureVector rps = extract_features(f, grid, cfg, Kind::RPS), bs = extract_features(f, grid, cfg, Kind::BS);
    CHECK(both.values.size() == rps.values.size() + bs.values.size());
    CHECK((both.values.head(rps.values.size()).array() == rps.values.array()).all());
    CHECK((both.values.tail(bs.values.size()).array() == bs.values.array()).all());

    cfg.encoding = Encoding::Modulus;
    const FeatureVector mod = extract_features(f, grid, cfg, Kind::RBS);
    CHECK(std::size_t(mod.values.size()) == feature_length(Kind::RBS, grid, Encoding::Modulus));
}

TEST_CASE("extraction is deterministic and translation invariant") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    const DescriptorConfig cfg;
    const Raster f = shape_image(7, 128);
    const Raster copy = f;
    CHECK((extract_features(f, grid, cfg, Kind::RBS).values.array() ==
           extract_features(copy, grid, cfg, Kind::RBS).values.array())
              .all());
    for (Kind k : {Kind::PS, Kind::RPS, Kind::BS, Kind::RBS}) {
        const Eigen::VectorXd a = extract_features(f, grid, cfg, k).values;
        const Eigen::VectorXd b = extract_features(shift_pixels(f, -6, 9), grid, cfg, k).values;
        CHECK(rel_l2(a, b) <= 1e-6);
    }
    CHECK_THROWS_AS(extract_features(Raster(RealGrid::Zero(64, 64)), grid, cfg, Kind::RBS), ZeroAverageError);
}

TEST_CASE("rotation invariance") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    const DescriptorConfig cfg;
    const Raster f = shape_image(8, 128);
    const Spectrum spec = descriptor_spectrum(f, grid.config, true);
    const Raster rot = rotate_resampled(f, kTwoPi / 6, barycenter(f));
    for (Kind k : {Kind::PS, Kind::RPS, Kind::BS, Kind::RBS}) {
        const Eigen::VectorXd base = invariants_from_sampler(spec, grid, spec.freq_step, k, cfg.encoding);
        for (int m = 1; m < N; ++m) {
            const RotatedSampler<Spectrum> rs{&spec, m, N};
            CHECK(rel_l2(base, invariants_from_sampler(rs, grid, spec.freq_step, k, cfg.encoding)) <= 1e-12);
        }
        CHECK(rel_l2(base, extract_features(rot, grid, cfg, k).values) <= 0.02);
    }
}

TEST_CASE("distinct shapes give distinct RBS vectors") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    const DescriptorConfig cfg;
    std::mt19937_64 rng(9);
    double closest = 1e300;
    for (int t = 0; t < 50; ++t) {
        const Raster a = render_shape(random_shape(rng), 64, 0.0, 0.7);
        const Raster b = render_shape(random_shape(rng), 64, 0.0, 0.7);
        closest = std::min(closest, rel_l2(extract_features(a, grid, cfg, Kind::RBS).values,
                                           extract_features(b, grid, cfg, Kind::RBS).values));
    }
    CHECK(closest >= 1e-3);
}

TEST_CASE("baseline kinds go through the same entry point") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    const DescriptorConfig cfg;
    const Raster f = shape_image(10, 64);
    CHECK(extract_features(f, grid, cfg, Kind::HU).values.size() == 7);
    CHECK(extract_features(f, grid, cfg, Kind::ZERNIKE).values.size() == 25);
    CHECK(extract_features(f, grid, cfg, Kind::AFMT).values.size() > 0);
}

}  // TEST_SUITE
