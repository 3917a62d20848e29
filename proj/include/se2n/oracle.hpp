#pragma once

#include "se2n/descriptors.hpp"
#include "se2n/group.hpp"

#include <string>

namespace se2n {

/// One fast-formula value against the scalar read off the matrix definition.
struct OracleCheck {
    std::string identity;
    Frequency lambda1 = Frequency::Zero();
    Frequency lambda2 = Frequency::Zero();
    int h = 0;
    Complex fast;
    Complex matrix;           // scalar factor, in the fast formula's convention
    double rel_err = 0.0;     // |fast - matrix| / |fast|
    double pattern_residual = 0.0;  // ||M - sum s T|| / ||M||, rank-1 structure check
};

/// Compares the fast invariants with the matrix-defined descriptors of a
/// lifted image. `phi` is the (numerically computed) lift, `f_hat` samples
/// the transform of the lifted image and `psi` is the wavelet used for it.
template <typename Sampler>
class LiftOracle {
public:
    LiftOracle(const CortexFunction& phi, const Sampler& f_hat, const GaborWavelet& psi)
        : phi_(phi), f_hat_(f_hat), psi_(psi), N_(phi.N()) {}

    OracleCheck ps(const Frequency& l) const {
        const Eigen::MatrixXcd M = ps_matrix(matrix_ft(phi_, l));
        const OmegaVector a = psi_conj(l);
        return finish("PS", l, Frequency::Zero(), 0, ps_fast(wf(l)), M, a * a.adjoint());
    }

    /// The matrix scalar is conj(I2); it is conjugated back before comparing.
    OracleCheck rps(const Frequency& l, int h) const {
        const Eigen::MatrixXcd M = rps_matrix(matrix_ft(phi_, rotate_freq(l, h, N_)), matrix_ft(phi_, l));
        const OmegaVector a = psi_conj(l);
        const OmegaVector w = wf(l);
        OracleCheck c = finish("RPS", l, Frequency::Zero(), h, rps_fast(cyclic_shift(w, h), w), M,
                               cyclic_shift(a, h) * a.adjoint());
        c.matrix = std::conj(c.matrix);
        c.rel_err = rel(c.fast, c.matrix);
        return c;
    }

    OracleCheck bs(const Frequency& l1, const Frequency& l2) const { return triple("BS", l1, l2, 0); }
    OracleCheck rbs(const Frequency& l1, const Frequency& l2, int h) const { return triple("RBS", l1, l2, h); }

    /// Largest relative error over the N scalars s_l of the last triple check
    /// (s_0 is the reported one; s_l are the same formula at (l1, R_l l2)).
    double last_all_blocks_err() const { return all_blocks_err_; }

    /// phi^(T^{l1} (x) T^{l2}) from the diagonal blocks, A^{-1} (+) A.
    Eigen::MatrixXcd tensor_ft_via_induction(const Frequency& l1, const Frequency& l2) const {
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N_ * N_, N_ * N_);
        for (int l = 0; l < N_; ++l) D.block(l * N_, l * N_, N_, N_) = matrix_ft(phi_, l1 + rotate_freq(l2, l, N_));
        const Eigen::MatrixXd A = induction_matrix(N_);
        return A.transpose().cast<Complex>() * D * A.cast<Complex>();
    }

private:
    OmegaVector wf(const Frequency& l) const { return omega(f_hat_, l, N_); }
    OmegaVector psi_conj(const Frequency& l) const {
        return omega([this](const Frequency& mu) { return psi_.hat(mu); }, l, N_).conjugate();
    }

    static double rel(const Complex& fast, const Complex& matrix) {
        const double d = std::abs(fast);
        return d > 0 ? std::abs(fast - matrix) / d : std::abs(matrix);
    }

    OracleCheck finish(const char* id, const Frequency& l1, const Frequency& l2, int h, const Complex& fast,
                       const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& T) const {
        OracleCheck c;
        c.identity = id;
        c.lambda1 = l1;
        c.lambda2 = l2;
        c.h = h;
        c.fast = fast;
        c.matrix = scalar_factor(M, T);
        c.rel_err = rel(c.fast, c.matrix);
        const double n = M.norm();
        c.pattern_residual = n > 0 ? (M - c.matrix * T).norm() / n : 0.0;
        return c;
    }

    OracleCheck triple(const char* id, const Frequency& l1, const Frequency& l2, int h) const {
        const Eigen::MatrixXcd M =
            rbs_matrix(matrix_ft(phi_, rotate_freq(l1, h, N_)), matrix_ft(phi_, l2), tensor_ft_via_induction(l1, l2));
        const Eigen::MatrixXd A = induction_matrix(N_);
        const Eigen::MatrixXcd B = A.cast<Complex>() * M * A.transpose().cast<Complex>();

        const OmegaVector a1 = cyclic_shift(psi_conj(l1), h), a2 = psi_conj(l2);
        const OmegaVector w1 = cyclic_shift(wf(l1), h), w2 = wf(l2);
        Eigen::MatrixXcd fitted = Eigen::MatrixXcd::Zero(B.rows(), B.cols());
        OracleCheck first;
        all_blocks_err_ = 0;
        for (int l = 0; l < N_; ++l) {
            const Frequency third = l1 + rotate_freq(l2, l, N_);
            const OmegaVector e = psi_conj(third);
            Eigen::MatrixXcd T(N_ * N_, N_);
            for (int k = 0; k < N_; ++k)
                for (int i = 0; i < N_; ++i)
                    T.row(k * N_ + i) = a1(i) * a2(mod(i - k, N_)) * e.adjoint();
            const Eigen::MatrixXcd Bl = B.middleCols(l * N_, N_);
            const Complex fast = rbs_fast(w1, cyclic_shift(w2, l), wf(third));
            OracleCheck c = finish(id, l1, l2, h, fast, Bl, T);
            fitted.middleCols(l * N_, N_) = c.matrix * T;
            all_blocks_err_ = std::max(all_blocks_err_, c.rel_err);
            if (l == 0) first = c;
        }
        const double n = B.norm();
        first.pattern_residual = n > 0 ? (B - fitted).norm() / n : 0.0;
        return first;
    }

    const CortexFunction& phi_;
    const Sampler& f_hat_;
    GaborWavelet psi_;
    int N_;
    mutable double all_blocks_err_ = 0;
};

}  // namespace se2n
