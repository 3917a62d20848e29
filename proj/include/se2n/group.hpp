#pragma once

#include "se2n/hexgrid.hpp"
#include "se2n/spectral.hpp"

#include <Eigen/Dense>

#include <vector>

namespace se2n {

/// Element (x, k) of SE(2,N): translation x followed by rotation 2*pi*k/N.
struct GroupElement {
    Vec2 x = Vec2::Zero();
    int k = 0;
};

/// (x,k)(y,r) = (x + R_k y, k + r).
GroupElement group_mul(const GroupElement& a, const GroupElement& b, int N);
GroupElement group_inverse(const GroupElement& a, int N);

/// T^lambda(x,k): entry (h, h+k mod N) = exp(i <lambda, R_h x>).
Eigen::MatrixXcd rep_matrix(const Frequency& lambda, const GroupElement& a, int N);

/// Function on Z_N x (pixel lattice): slice k sampled at origin + spacing * (col, row).
struct CortexFunction {
    std::vector<ComplexGrid> slices;
    Vec2 origin = Vec2::Zero();
    double spacing = 1.0;

    int N() const { return static_cast<int>(slices.size()); }
    int width() const { return slices.empty() ? 0 : static_cast<int>(slices.front().cols()); }
    int height() const { return slices.empty() ? 0 : static_cast<int>(slices.front().rows()); }
};

/// Gabor wavelet exp(-|x|^2 / (2 sigma^2)) exp(i <nu, x>) in physical units.
struct GaborWavelet {
    double sigma = 4.0;
    Vec2 nu = Vec2(kTwoPi / 8.0, 0.0);

    Complex operator()(const Vec2& x) const;
    /// Closed-form transform 2 pi sigma^2 exp(-sigma^2 |mu - nu|^2 / 2).
    Complex hat(const Frequency& mu) const;
    /// sum_k |hat(R_{-k} lambda)|^2.
    double admissibility(const Frequency& lambda, int N) const;
};

/// Entry (i, j) = DTFT of slice (i - j mod N) at R_{-j} lambda.
Eigen::MatrixXcd matrix_ft(const CortexFunction& phi, const Frequency& lambda);

/// Fourier coefficient of phi at T^{lambda1} (x) T^{lambda2}, N^2 x N^2 with
/// row/column index i1 * N + i2.
Eigen::MatrixXcd tensor_matrix_ft(const CortexFunction& phi, const Frequency& lambda1, const Frequency& lambda2);

/// Brute-force Haar sum  sum_k sum_x phi(x,k) rep(inverse(x,k)) spacing^2  for an
/// arbitrary representation `rep : GroupElement -> matrix`.
template <typename Rep>
Eigen::MatrixXcd haar_ft(const CortexFunction& phi, const Rep& rep) {
    const int N = phi.N();
    Eigen::MatrixXcd acc;
    for (int k = 0; k < N; ++k) {
        const auto& s = phi.slices[static_cast<std::size_t>(k)];
        for (Eigen::Index r = 0; r < s.rows(); ++r) {
            for (Eigen::Index c = 0; c < s.cols(); ++c) {
                if (s(r, c) == Complex(0.0)) continue;
                const GroupElement a{phi.origin + phi.spacing * Vec2(double(c), double(r)), k};
                Eigen::MatrixXcd term = s(r, c) * rep(group_inverse(a, N));
                if (acc.size() == 0) acc = Eigen::MatrixXcd::Zero(term.rows(), term.cols());
                acc += term;
            }
        }
    }
    return acc * (phi.spacing * phi.spacing);
}

/// (Lambda(x,0) phi)(y, r) = phi(y - x, r): moves the sampling grid.
CortexFunction translate(const CortexFunction& phi, const Vec2& t);

/// Lf(x,k) = integral f(y) conj(Psi(R_{-k}(y - x))) dy, computed by FFT
/// correlation with the wavelet truncated at 8 sigma. The output grid extends
/// the raster by the truncation radius on every side.
CortexFunction lift(const Raster& f, const GaborWavelet& psi, int N);

/// Rank-1 Fourier coefficient of the lift: entry (i, j) =
/// conj(omega_Psi(lambda))_i * omega_f(lambda)_j.
template <typename Sampler>
Eigen::MatrixXcd lift_ft_rank1(const Sampler& f_hat, const GaborWavelet& psi, const Frequency& lambda, int N) {
    const OmegaVector wf = omega(f_hat, lambda, N);
    const OmegaVector wpsi = omega([&](const Frequency& mu) { return psi.hat(mu); }, lambda, N);
    return wpsi.conjugate() * wf.transpose();
}

/// Permutation A : C^N (x) C^N -> sum_k C^N, (A v)_k(h) = v(h, h - k), with
/// tensor index k * N + h on both sides.
Eigen::MatrixXd induction_matrix(int N);

/// A M A^{-1}; block (k, h) of the result is rows k*N.., cols h*N...
template <typename Derived>
Eigen::MatrixXcd induction_apply(const Eigen::MatrixBase<Derived>& M, int N) {
    if (M.rows() != N * N || M.cols() != N * N) {
        throw std::invalid_argument("induction_apply: expected an N^2 x N^2 matrix");
    }
    const Eigen::MatrixXd A = induction_matrix(N);
    return A.cast<Complex>() * M * A.transpose().cast<Complex>();
}

/// Frobenius norm of everything outside the N x N diagonal blocks.
double off_block_norm(const Eigen::MatrixXcd& B, int N);

struct GenericityEntry {
    Frequency lambda;
    double sv_ratio = 0.0;  // smallest / largest singular value
    bool in_x_space = true; // N even: omega(h + N/2) = conj(omega(h))
    bool generic = false;
};

struct GenericityReport {
    std::vector<GenericityEntry> entries;
    double generic_fraction = 0.0;
};

/// Circulant genericity of omega_f over the grid. N odd: complex rank of
/// Circ omega = [omega, S omega, ...]. N even: {S^k omega} must be a real
/// basis of X = {v : v(h + N/2) = conj v(h)}. Threshold: ratio >= 1e-8.
GenericityReport check_genericity(const Spectrum& spec, const HexGrid& grid);

template <typename Sampler>
GenericityEntry genericity_at(const Sampler& s, const Frequency& lambda, int N) {
    const OmegaVector w = omega(s, lambda, N);
    Eigen::MatrixXcd circ(N, N);
    for (int k = 0; k < N; ++k)
        for (int h = 0; h < N; ++h) circ(h, k) = w(mod(h + k, N));
    GenericityEntry e;
    e.lambda = lambda;
    Eigen::VectorXd sv;
    if (N % 2 == 1) {
        sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(circ).singularValues();
    } else {
        Eigen::MatrixXd stacked(2 * N, N);
        stacked << circ.real(), circ.imag();
        sv = Eigen::JacobiSVD<Eigen::MatrixXd>(stacked).singularValues();
        const double scale = w.norm();
        for (int h = 0; h < N / 2; ++h) {
            if (std::abs(w(h + N / 2) - std::conj(w(h))) > 1e-9 * std::max(scale, 1e-300)) e.in_x_space = false;
        }
    }
    e.sv_ratio = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    e.generic = e.in_x_space && e.sv_ratio >= 1e-8;
    return e;
}

}  // namespace se2n
