#pragma once

#include "se2n/hexgrid.hpp"
#include "se2n/spectral.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <optional>
#include <string>
#include <vector>

namespace se2n {

// Fast invariants. Arguments are omega vectors (see se2n::omega).

/// sum_k conj(w_h(k)) w(k), with w_h = omega(R_h lambda). ps_fast and
/// rbs_fast reuse the same expressions, so h = 0 reductions are bit-exact.
template <typename A, typename B>
Complex rps_fast(const Eigen::MatrixBase<A>& w_h, const Eigen::MatrixBase<B>& w) {
    return (w_h.conjugate().array() * w.array()).sum();
}

/// ||omega||^2.
template <typename A>
double ps_fast(const Eigen::MatrixBase<A>& w) {
    return rps_fast(w, w).real();
}

/// sum_k w1_k w2_k conj(w12_k).
template <typename A, typename B, typename C>
Complex bs_fast(const Eigen::MatrixBase<A>& w1, const Eigen::MatrixBase<B>& w2, const Eigen::MatrixBase<C>& w12) {
    return (w1.array() * w2.array() * w12.conjugate().array()).sum();
}

/// Same product with w_h = omega(R_h lambda1).
template <typename A, typename B, typename C>
Complex rbs_fast(const Eigen::MatrixBase<A>& w_h, const Eigen::MatrixBase<B>& w2, const Eigen::MatrixBase<C>& w12) {
    return bs_fast(w_h, w2, w12);
}

/// omega(R_h lambda) from omega(lambda): entry k is w((k - h) mod N).
template <typename A>
OmegaVector cyclic_shift(const Eigen::MatrixBase<A>& w, int h) {
    const int N = static_cast<int>(w.size());
    OmegaVector out(N);
    for (int k = 0; k < N; ++k) out(k) = w(mod(k - h, N));
    return out;
}

/// <omega(R_h l1) . omega(R_k l2), omega(l1 + R_{h+k} l2)>.
template <typename Sampler>
Complex cyclic_bs(const Sampler& s, const Frequency& l1, const Frequency& l2, int k, int h, int N) {
    const OmegaVector w1 = omega(s, l1, N), w2 = omega(s, l2, N);
    const OmegaVector w3 = omega(s, l1 + rotate_freq(l2, h + k, N), N);
    return bs_fast(cyclic_shift(w1, h), cyclic_shift(w2, k), w3);
}

// Matrix definitions, used as oracles.

template <typename A>
Eigen::MatrixXcd ps_matrix(const Eigen::MatrixBase<A>& phi) {
    return phi * phi.adjoint();
}

template <typename A, typename B>
Eigen::MatrixXcd rps_matrix(const Eigen::MatrixBase<A>& phi_h, const Eigen::MatrixBase<B>& phi) {
    return phi_h * phi.adjoint();
}

/// (phi1 (x) phi2) tensor_ft^*; pass phi(R_h lambda1) as phi1 for the
/// rotational variant.
template <typename A, typename B, typename C>
Eigen::MatrixXcd bs_matrix(const Eigen::MatrixBase<A>& phi1, const Eigen::MatrixBase<B>& phi2,
                           const Eigen::MatrixBase<C>& tensor_ft) {
    if (tensor_ft.rows() != phi1.rows() * phi2.rows() || tensor_ft.cols() != phi1.cols() * phi2.cols()) {
        throw std::invalid_argument("bs_matrix: dimension mismatch");
    }
    const Eigen::MatrixXcd k = Eigen::kroneckerProduct(phi1.eval(), phi2.eval());
    return k * tensor_ft.adjoint();
}

template <typename A, typename B, typename C>
Eigen::MatrixXcd rbs_matrix(const Eigen::MatrixBase<A>& phi_h1, const Eigen::MatrixBase<B>& phi2,
                            const Eigen::MatrixBase<C>& tensor_ft) {
    return bs_matrix(phi_h1, phi2, tensor_ft);
}

/// Least-squares s with M ~ s * pattern.
template <typename A, typename B>
Complex scalar_factor(const Eigen::MatrixBase<A>& M, const Eigen::MatrixBase<B>& pattern) {
    const double n = pattern.squaredNorm();
    if (n == 0) return Complex(0.0);
    return (pattern.conjugate().array() * M.array()).sum() / n;
}

enum class Kind { PS, BS, RPS, RBS, RPS_BS, CYCLIC_BS, HU, ZERNIKE, AFMT };
enum class Encoding { ReIm, Modulus };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& name);  // "RPS+BS" accepted; throws on unknown
std::string to_string(Encoding e);
Encoding parse_encoding(const std::string& name);

struct DescriptorConfig {
    GridConfig grid;
    Encoding encoding = Encoding::ReIm;
    bool center = true;
    std::vector<Kind> kinds{Kind::RBS};
};

struct FeatureVector {
    Eigen::VectorXd values;
    Kind kind = Kind::RBS;
    std::string manifest_hash;
    std::optional<int> label;
};

bool is_spectral(Kind kind);

/// Number of features for a spectral kind on `grid`.
std::size_t feature_length(Kind kind, const HexGrid& grid, Encoding encoding);

/// Spectral invariants in manifest order. Points: PS (1 real), RPS (h =
/// 0..N-1). Pairs (i <= j): BS. Ordered pairs: RBS (h), CYCLIC_BS (k, then h).
/// `freq_step` converts grid bins to angular frequency.
template <typename Sampler>
Eigen::VectorXd invariants_from_sampler(const Sampler& s, const HexGrid& grid, const Vec2& freq_step, Kind kind,
                                        Encoding encoding) {
    const int N = grid.config.N;
    std::vector<double> out;
    out.reserve(feature_length(kind, grid, encoding));
    auto push = [&](const Complex& z) {
        if (encoding == Encoding::ReIm) {
            out.push_back(z.real());
            out.push_back(z.imag());
        } else {
            out.push_back(std::abs(z));
        }
    };
    std::vector<OmegaVector> w;
    w.reserve(grid.points.size());
    for (const auto& p : grid.points) w.push_back(omega(s, grid.physical(p, freq_step), N));
    auto sum_omega = [&](int i, int j) { return omega(s, grid.physical(grid.sum(i, j), freq_step), N); };

    auto emit = [&](Kind k) {
        switch (k) {
            case Kind::PS:
                for (const auto& v : w) out.push_back(ps_fast(v));
                break;
            case Kind::RPS:
                for (const auto& v : w)
                    for (int h = 0; h < N; ++h) push(rps_fast(cyclic_shift(v, h), v));
                break;
            case Kind::BS:
                for (const auto& [i, j] : grid.pairs) push(bs_fast(w[std::size_t(i)], w[std::size_t(j)], sum_omega(i, j)));
                break;
            case Kind::RBS:
                for (const auto& [i, j] : grid.ordered_pairs) {
                    const OmegaVector w12 = sum_omega(i, j);
                    for (int h = 0; h < N; ++h)
                        push(rbs_fast(cyclic_shift(w[std::size_t(i)], h), w[std::size_t(j)], w12));
                }
                break;
            case Kind::CYCLIC_BS:
                for (const auto& [i, j] : grid.ordered_pairs) {
                    const Frequency l1 = grid.physical(grid.points[std::size_t(i)], freq_step);
                    const Frequency l2 = grid.physical(grid.points[std::size_t(j)], freq_step);
                    std::vector<OmegaVector> third;
                    for (int r = 0; r < N; ++r) third.push_back(omega(s, l1 + rotate_freq(l2, r, N), N));
                    for (int kk = 0; kk < N; ++kk) {
                        const OmegaVector w2 = cyclic_shift(w[std::size_t(j)], kk);
                        for (int h = 0; h < N; ++h)
                            push(bs_fast(cyclic_shift(w[std::size_t(i)], h), w2, third[std::size_t(mod(h + kk, N))]));
                    }
                }
                break;
            default:
                throw std::invalid_argument("invariants_from_sampler: not a spectral kind");
        }
    };
    if (kind == Kind::RPS_BS) {
        emit(Kind::RPS);
        emit(Kind::BS);
    } else {
        emit(kind);
    }
    return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

/// Spectrum used for descriptor extraction: padded shifted FFT, centered at
/// the barycenter when `center`.
Spectrum descriptor_spectrum(const Raster& f, const GridConfig& grid, bool center);

/// Full pipeline for one image and one kind (spectral or baseline).
FeatureVector extract_features(const Raster& f, const HexGrid& grid, const DescriptorConfig& config, Kind kind);

}  // namespace se2n
