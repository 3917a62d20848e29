#include "se2n/group.hpp"

namespace se2n {

GroupElement group_mul(const GroupElement& a, const GroupElement& b, int N) {
    return {a.x + rotation(a.k, N) * b.x, mod(a.k + b.k, N)};
}

GroupElement group_inverse(const GroupElement& a, int N) {
    return {-(rotation(-a.k, N) * a.x), mod(-a.k, N)};
}

Eigen::MatrixXcd rep_matrix(const Frequency& lambda, const GroupElement& a, int N) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    for (int h = 0; h < N; ++h) {
        T(h, mod(h + a.k, N)) = std::polar(1.0, lambda.dot(rotation(h, N) * a.x));
    }
    return T;
}

Complex GaborWavelet::operator()(const Vec2& x) const {
    return std::exp(-x.squaredNorm() / (2 * sigma * sigma)) * std::polar(1.0, nu.dot(x));
}

Complex GaborWavelet::hat(const Frequency& mu) const {
    return kTwoPi * sigma * sigma * std::exp(-0.5 * sigma * sigma * (mu - nu).squaredNorm());
}

double GaborWavelet::admissibility(const Frequency& lambda, int N) const {
    double acc = 0;
    for (int k = 0; k < N; ++k) acc += std::norm(hat(rotate_freq(lambda, -k, N)));
    return acc;
}

namespace {

Complex slice_dtft(const CortexFunction& phi, int k, const Frequency& mu) {
    return dtft(phi.slices[static_cast<std::size_t>(k)], phi.origin, phi.spacing, mu);
}

}  // namespace

Eigen::MatrixXcd matrix_ft(const CortexFunction& phi, const Frequency& lambda) {
    const int N = phi.N();
    Eigen::MatrixXcd M(N, N);
    for (int j = 0; j < N; ++j) {
        const Frequency mu = rotate_freq(lambda, -j, N);
        for (int k = 0; k < N; ++k) M(mod(j + k, N), j) = slice_dtft(phi, k, mu);
    }
    return M;
}

Eigen::MatrixXcd tensor_matrix_ft(const CortexFunction& phi, const Frequency& lambda1, const Frequency& lambda2) {
    const int N = phi.N();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N * N, N * N);
    for (int j1 = 0; j1 < N; ++j1) {
        for (int j2 = 0; j2 < N; ++j2) {
            const Frequency mu = rotate_freq(lambda1, -j1, N) + rotate_freq(lambda2, -j2, N);
            for (int k = 0; k < N; ++k) {
                M(mod(j1 + k, N) * N + mod(j2 + k, N), j1 * N + j2) = slice_dtft(phi, k, mu);
            }
        }
    }
    return M;
}

CortexFunction translate(const CortexFunction& phi, const Vec2& t) {
    CortexFunction out = phi;
    out.origin += t;
    return out;
}

CortexFunction lift(const Raster& f, const GaborWavelet& psi, int N) {
    if (N < 1) throw std::invalid_argument("lift: N must be positive");
    const double s = f.spacing;
    const int m = static_cast<int>(std::ceil(8.0 * psi.sigma / s));
    const int W = f.width() + 2 * m, H = f.height() + 2 * m;

    ComplexGrid F = ComplexGrid::Zero(H, W);
    F.block(m, m, f.height(), f.width()) = f.pixels.cast<Complex>();
    fft2_inplace(F);

    CortexFunction out;
    out.origin = f.origin - Vec2(m * s, m * s);
    out.spacing = s;
    for (int k = 0; k < N; ++k) {
        const Eigen::Matrix2d Rk = rotation(-k, N);
        ComplexGrid K = ComplexGrid::Zero(H, W);
        for (int dy = -m; dy <= m; ++dy) {
            for (int dx = -m; dx <= m; ++dx) {
                K(mod(-dy, H), mod(-dx, W)) = std::conj(psi(Rk * Vec2(dx * s, dy * s)));
            }
        }
        fft2_inplace(K);
        K *= F;
        fft2_inplace(K, true);
        out.slices.push_back(K * (s * s));
    }
    return out;
}

Eigen::MatrixXd induction_matrix(int N) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N * N, N * N);
    for (int k = 0; k < N; ++k)
        for (int h = 0; h < N; ++h) A(k * N + h, h * N + mod(h - k, N)) = 1.0;
    return A;
}

double off_block_norm(const Eigen::MatrixXcd& B, int N) {
    double acc = 0;
    for (int k = 0; k < N; ++k)
        for (int h = 0; h < N; ++h)
            if (k != h) acc += B.block(k * N, h * N, N, N).squaredNorm();
    return std::sqrt(acc);
}

GenericityReport check_genericity(const Spectrum& spec, const HexGrid& grid) {
    GenericityReport report;
    int generic = 0;
    for (const auto& p : grid.points) {
        report.entries.push_back(genericity_at(spec, grid.physical(p, spec.freq_step), grid.config.N));
        generic += report.entries.back().generic ? 1 : 0;
    }
    report.generic_fraction = grid.points.empty() ? 0.0 : double(generic) / double(grid.points.size());
    return report;
}

}  // namespace se2n
