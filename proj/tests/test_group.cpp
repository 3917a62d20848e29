#include "se2n/group.hpp"
#include "se2n/hexgrid.hpp"
#include "se2n/raster.hpp"
#include "se2n/synth.hpp"

#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <random>

using namespace se2n;

namespace {

constexpr int N = 6;

GroupElement random_element(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5, 5);
    return {Vec2(u(rng), u(rng)), int(rng() % N)};
}

Raster smooth_image(std::mt19937_64& rng, int size = 48) {
    std::uniform_real_distribution<double> pos(0.35 * size, 0.65 * size), w(2.5, 4.0), amp(50, 200);
    Raster f(RealGrid::Zero(size, size), Vec2(-0.5 * size, -0.5 * size));
    for (int g = 0; g < 3; ++g) {
        const Vec2 mu(pos(rng), pos(rng));
        const double s = w(rng), a = amp(rng);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) f.pixels(r, c) += a * std::exp(-(Vec2(c, r) - mu).squaredNorm() / (2 * s * s));
    }
    return f;
}

// Lifted-image tensor coefficient from rank-1 blocks: A^T (sum_l L^(l1 + R_l l2)) A.
template <typename Sampler>
Eigen::MatrixXcd tensor_rank1(const Sampler& f_hat, const GaborWavelet& psi, const Frequency& l1, const Frequency& l2) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N * N, N * N);
    for (int l = 0; l < N; ++l) D.block(l * N, l * N, N, N) = lift_ft_rank1(f_hat, psi, l1 + rotate_freq(l2, l, N), N);
    const Eigen::MatrixXcd A = induction_matrix(N).cast<Complex>();
    return A.transpose() * D * A;
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("group law") {
    const GroupElement id{};
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        const GroupElement a = random_element(rng), b = random_element(rng);
        const GroupElement ib = group_mul(id, b, N);
        CHECK((ib.x - b.x).norm() == 0.0);
        CHECK(ib.k == b.k);
        const GroupElement e = group_mul(a, group_inverse(a, N), N);
        CHECK(e.x.norm() <= 1e-12);
        CHECK(e.k == 0);
    }
    const GroupElement p = group_mul({Vec2(1, 0), 1}, {Vec2(1, 0), 0}, 4);
    CHECK((p.x - Vec2(1, 1)).norm() <= 1e-15);
    CHECK(p.k == 1);
}

TEST_CASE("representation matrices") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2, 2);
    const Frequency l(0.7, -0.3);
    CHECK((rep_matrix(l, GroupElement{}, N) - Eigen::MatrixXcd::Identity(N, N)).norm() == 0.0);
    for (int t = 0; t < 50; ++t) {
        const Frequency lam(u(rng), u(rng));
        const GroupElement a = random_element(rng), b = random_element(rng);
        const Eigen::MatrixXcd Ta = rep_matrix(lam, a, N);
        CHECK((rep_matrix(lam, group_mul(a, b, N), N) - Ta * rep_matrix(lam, b, N)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((Ta * Ta.adjoint() - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff() <= 1e-12);
        for (int h = 0; h < N; ++h)
            CHECK(std::abs(Ta(h, mod(h + a.k, N)) - std::polar(1.0, lam.dot(rotation(h, N) * a.x))) <= 1e-15);
    }
}

TEST_CASE("induction matrix") {
    for (int n : {3, 4, 6}) {
        const Eigen::MatrixXd A = induction_matrix(n);
        CHECK((A * A.transpose() - Eigen::MatrixXd::Identity(n * n, n * n)).norm() == 0.0);
        CHECK((A.array() == 0.0 || A.array() == 1.0).all());
        CHECK((A.rowwise().sum().array() == 1.0).all());
        CHECK((A.colwise().sum().array() == 1.0).all());
    }
    CHECK_THROWS_AS(induction_apply(Eigen::MatrixXcd::Identity(5, 5), 2), std::invalid_argument);
}

TEST_CASE("Kronecker induction lemma on random matrices") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 10; ++t) {
        Eigen::MatrixXcd P(N, N), Q(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) P(i, j) = {g(rng), g(rng)}, Q(i, j) = {g(rng), g(rng)};
        const Eigen::MatrixXcd B = induction_apply(Eigen::kroneckerProduct(P, Q).eval(), N);
        double worst = 0;
        for (int k = 0; k < N; ++k)
            for (int h = 0; h < N; ++h)
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        worst = std::max(worst, std::abs(B(k * N + i, h * N + j) - P(i, j) * Q(mod(i - k, N), mod(j - h, N))));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("matrix Fourier coefficients") {
    CortexFunction zero;
    zero.slices.assign(N, ComplexGrid::Zero(6, 6));
    CHECK(matrix_ft(zero, Frequency(0.3, 0.2)).norm() == 0.0);

    // Only slice 0, radial: diagonal with equal entries.
    CortexFunction radial;
    radial.origin = Vec2(-16, -16);
    radial.slices.assign(N, ComplexGrid::Zero(33, 33));
    for (int r = 0; r < 33; ++r)
        for (int c = 0; c < 33; ++c)
            radial.slices[0](r, c) = std::exp(-(radial.origin + Vec2(c, r)).squaredNorm() / 8.0);
    const Eigen::MatrixXcd M = matrix_ft(radial, Frequency(0.25, 0.1));
    const Complex d = M(0, 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) CHECK(std::abs(M(i, j) - (i == j ? d : Complex(0))) <= 1e-12 * std::abs(d));

    // Against the Haar sum, ordinary and tensor representations.
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    CortexFunction phi;
    phi.origin = Vec2(-3.5, -2.0);
    phi.spacing = 0.7;
    for (int k = 0; k < N; ++k) {
        ComplexGrid s(8, 7);
        for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = {g(rng), g(rng)};
        phi.slices.push_back(s);
    }
    const Frequency l1(0.4, -0.9), l2(-0.3, 0.5);
    const Eigen::MatrixXcd H = haar_ft(phi, [&](const GroupElement& a) { return rep_matrix(l1, a, N); });
    CHECK((matrix_ft(phi, l1) - H).norm() <= 1e-12 * H.norm());
    const Eigen::MatrixXcd H2 = haar_ft(phi, [&](const GroupElement& a) {
        return Eigen::MatrixXcd(Eigen::kroneckerProduct(rep_matrix(l1, a, N), rep_matrix(l2, a, N)));
    });
    CHECK((tensor_matrix_ft(phi, l1, l2) - H2).norm() <= 1e-12 * H2.norm());

    // Translating phi multiplies its coefficient by T(a)^{-1} on the right.
    const Vec2 t(3.0, -2.0);
    const Eigen::MatrixXcd lhs = matrix_ft(translate(phi, t), l1);
    const Eigen::MatrixXcd rhs = matrix_ft(phi, l1) * rep_matrix(l1, GroupElement{t, 0}, N).adjoint();
    CHECK((lhs - rhs).norm() <= 1e-6 * rhs.norm());
}

TEST_CASE("induction-reduction of the tensor coefficient") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    CortexFunction phi;
    phi.origin = Vec2(-12, -12);
    for (int k = 0; k < N; ++k) {
        ComplexGrid s = ComplexGrid::Zero(25, 25);
        const Complex c{g(rng), g(rng)};
        const Vec2 mu(g(rng), g(rng));
        for (int r = 0; r < 25; ++r)
            for (int col = 0; col < 25; ++col)
                s(r, col) = c * std::exp(-(phi.origin + Vec2(col, r) - mu).squaredNorm() / 12.0);
        phi.slices.push_back(s);
    }
    const Frequency l1(0.3, 0.1), l2(0.05, 0.4);
    const Eigen::MatrixXcd B = induction_apply(tensor_matrix_ft(phi, l1, l2), N);
    CHECK(off_block_norm(B, N) <= 1e-8 * B.norm());
    for (int k = 0; k < N; ++k)
        CHECK((B.block(k * N, k * N, N, N) - matrix_ft(phi, l1 + rotate_freq(l2, k, N))).norm() <= 1e-8 * B.norm());
}

TEST_CASE("Gabor wavelet") {
    const GaborWavelet psi;
    CHECK(std::abs(psi(Vec2::Zero()) - Complex(1, 0)) == 0.0);
    CHECK(std::abs(psi.hat(psi.nu) - Complex(kTwoPi * 16, 0)) <= 1e-12);
    // Weak admissibility on the working band of the default grid (128 px images).
    const HexGrid grid = build_hex_grid(GridConfig{});
    const Vec2 step = Vec2::Constant(kTwoPi / 256);
    for (const auto& p : grid.points) CHECK(psi.admissibility(grid.physical(p, step), N) > 0.0);
}

TEST_CASE("lift") {
    const GaborWavelet psi;
    const CortexFunction z = lift(Raster(RealGrid::Zero(16, 16)), psi, N);
    REQUIRE(z.N() == N);
    for (const auto& s : z.slices) CHECK(s.abs().maxCoeff() == 0.0);

    std::mt19937_64 rng(6);
    const Raster f = smooth_image(rng, 96);
    const CortexFunction lf = lift(f, psi, N);
    const int m = int(std::ceil(8 * psi.sigma));
    CHECK(lf.width() == f.width() + 2 * m);
    CHECK((lf.origin - (f.origin - Vec2(m, m))).norm() == 0.0);

    // Slice spectra obey the correlation theorem.
    Eigen::VectorXcd a(6 * N), b(6 * N);
    int idx = 0;
    for (int t = 0; t < 6; ++t) {
        const Frequency l = Frequency(t - 2.5, 0.5 * t - 1.0) * (kTwoPi / lf.width());
        for (int k = 0; k < N; ++k, ++idx) {
            a(idx) = dtft(lf.slices[std::size_t(k)], lf.origin, lf.spacing, l);
            b(idx) = dtft(f, l) * std::conj(psi.hat(rotate_freq(l, -k, N)));
        }
    }
    CHECK((a - b).norm() <= 1e-9 * b.norm());

    // Left invariance: lifting a translated image translates the lift.
    const Raster g = shift_pixels(f, 4, -3);
    const CortexFunction lg = lift(g, psi, N);
    double diff = 0, ref = 0;
    for (int k = 0; k < N; ++k) {
        const auto& A = lg.slices[std::size_t(k)];
        const auto& B = lf.slices[std::size_t(k)];
        // g(row, col) = f(row + 3, col - 4)
        for (int r = 0; r + 3 < A.rows(); ++r)
            for (int c = 4; c < A.cols(); ++c) {
                diff += std::norm(A(r, c) - B(r + 3, c - 4));
                ref += std::norm(B(r + 3, c - 4));
            }
    }
    CHECK(std::sqrt(diff / ref) <= 1e-9);
}

TEST_CASE("rank-1 formula for the lift") {
    const GaborWavelet psi;
    std::mt19937_64 rng(7);
    const Raster f = smooth_image(rng);
    const CortexFunction lf = lift(f, psi, N);
    const DtftSampler fhat{&f};
    for (const Frequency& l : {Frequency(0.1, 0.05), Frequency(0.3, 0.2), Frequency(0.45, 0.02)}) {
        const Eigen::MatrixXcd R = lift_ft_rank1(fhat, psi, l, N);
        CHECK((matrix_ft(lf, l) - R).norm() <= 1e-6 * R.norm());
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(R).singularValues();
        CHECK(sv(1) <= 1e-9 * sv(0));
    }
    const Raster zero(RealGrid::Zero(8, 8));
    CHECK(lift_ft_rank1(DtftSampler{&zero}, psi, Frequency(0.2, 0.1), N).norm() == 0.0);
}

TEST_CASE("tensor coefficients of roto-translated images") {
    // g = f moved by a = (x, m): Lg^(T1 (x) T2) = Lf^(T1 (x) T2) (T1(a)^-1 (x) T2(a)^-1).
    const GaborWavelet psi;
    std::mt19937_64 rng(8);
    const Raster f = smooth_image(rng);
    const DtftSampler fhat{&f};
    for (int m = 0; m < N; ++m) {
        const GroupElement a{Vec2(1.5, -2.25), m};
        auto ghat = [&](const Frequency& l) { return std::polar(1.0, -l.dot(a.x)) * fhat(rotate_freq(l, -m, N)); };
        for (int k = 0; k < N; ++k) {
            const Frequency l1 = rotate_freq(Frequency(0.2, 0.05), k, N), l2 = rotate_freq(Frequency(0.04, 0.3), k, N);
            const Eigen::MatrixXcd U = Eigen::kroneckerProduct(rep_matrix(l1, a, N).adjoint().eval(),
                                                               rep_matrix(l2, a, N).adjoint().eval());
            const Eigen::MatrixXcd lhs = tensor_rank1(fhat, psi, l1, l2) * U;
            const Eigen::MatrixXcd rhs = tensor_rank1(ghat, psi, l1, l2);
            CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
        }
    }
}

TEST_CASE("circulant genericity") {
    const HexGrid grid = build_hex_grid(GridConfig{});
    CHECK(check_genericity(dft2_shifted(Raster(RealGrid::Zero(64, 64)), 2), grid).generic_fraction == 0.0);

    std::mt19937_64 rng(9);
    const Raster f = render_shape(random_shape(rng), 64, 0.4);
    const GenericityReport rep = check_genericity(dft2_shifted(f, 2), grid);
    CHECK(rep.entries.size() == grid.points.size());
    CHECK(rep.generic_fraction >= 0.95);
    for (const auto& e : rep.entries) CHECK(e.in_x_space);

    auto radial = [](const Frequency& l) { return Complex(std::exp(-4.0 * l.squaredNorm()), 0.0); };
    const GenericityEntry e = genericity_at(radial, Frequency(0.2, 0.1), N);
    CHECK_FALSE(e.generic);
    CHECK(e.sv_ratio <= 1e-12);

    // Odd N: complex rank of the circulant.
    auto generic = [](const Frequency& l) { return Complex(std::cos(3 * l.x() + l.y()), std::sin(l.x() - 2 * l.y())); };
    CHECK(genericity_at(generic, Frequency(0.7, 0.2), 5).generic);
}

}  // TEST_SUITE
