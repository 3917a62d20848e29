#include "se2n/hexgrid.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <tuple>

namespace se2n {

Frequency lattice_point(int a, int b, double step) {
    return Frequency((a + 0.5 * b) * step, b * (std::sqrt(3.0) / 2.0) * step);
}

bool in_window(const Frequency& bins, int window_bins) {
    const double half = 0.5 * window_bins + 1e-9;
    return std::abs(bins.x()) <= half && std::abs(bins.y()) <= half;
}

LatticePoint HexGrid::sum(int i, int j) const {
    const auto& p = points[static_cast<std::size_t>(i)];
    const auto& q = points[static_cast<std::size_t>(j)];
    LatticePoint s;
    s.a = p.a + q.a;
    s.b = p.b + q.b;
    s.bins = lattice_point(s.a, s.b, config.step_bins);
    return s;
}

namespace {

bool in_slice(int a, int b, const Frequency& bins, int N) {
    if (a == 0 && b == 0) return false;
    if (N == 6) return a > 0 && b >= 0;  // exact for the hexagonal lattice
    double angle = std::atan2(bins.y(), bins.x());
    if (angle < -1e-12) angle += kTwoPi;
    return angle >= -1e-12 && angle < kTwoPi / N - 1e-9;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

HexGrid build_hex_grid(const GridConfig& config) {
    if (config.N < 1) throw std::invalid_argument("build_hex_grid: N must be positive");
    if (config.window_bins < 1 || !(config.step_bins > 0)) {
        throw std::invalid_argument("build_hex_grid: window and step must be positive");
    }
    HexGrid grid;
    grid.config = config;
    const int range = static_cast<int>(std::ceil(config.window_bins / config.step_bins)) + 2;
    for (int b = -range; b <= range; ++b) {
        for (int a = -2 * range; a <= 2 * range; ++a) {
            const Frequency f = lattice_point(a, b, config.step_bins);
            if (!in_window(f, config.window_bins) || !in_slice(a, b, f, config.N)) continue;
            grid.points.push_back({a, b, f});
        }
    }
    if (grid.points.empty()) throw std::invalid_argument("build_hex_grid: empty grid (window too small)");
    std::sort(grid.points.begin(), grid.points.end(), [](const LatticePoint& p, const LatticePoint& q) {
        const long np = 1L * p.a * p.a + 1L * p.a * p.b + 1L * p.b * p.b;
        const long nq = 1L * q.a * q.a + 1L * q.a * q.b + 1L * q.b * q.b;
        if (np != nq) return np < nq;
        return std::atan2(p.bins.y(), p.bins.x()) < std::atan2(q.bins.y(), q.bins.x());
    });

    const int n = static_cast<int>(grid.points.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!in_window(grid.sum(i, j).bins, config.window_bins)) continue;
            grid.ordered_pairs.emplace_back(i, j);
            if (i <= j) grid.pairs.emplace_back(i, j);
        }
    }

    std::string csv = "# se2n hex grid v1 N=" + std::to_string(config.N) +
                      " window_bins=" + std::to_string(config.window_bins) +
                      " step_bins=" + format_double(config.step_bins) +
                      " pad_factor=" + std::to_string(config.pad_factor) + " units=padded_bins\n";
    csv += "index,lambda_x,lambda_y\n";
    for (int i = 0; i < n; ++i) {
        const auto& p = grid.points[static_cast<std::size_t>(i)];
        csv += std::to_string(i) + ',' + format_double(p.bins.x()) + ',' + format_double(p.bins.y()) + '\n';
    }
    csv += "pair,i,j\n";
    for (std::size_t k = 0; k < grid.pairs.size(); ++k) {
        csv += std::to_string(k) + ',' + std::to_string(grid.pairs[k].first) + ',' +
               std::to_string(grid.pairs[k].second) + '\n';
    }
    grid.manifest_csv = std::move(csv);
    grid.manifest_hash = sha256_hex(grid.manifest_csv);
    return grid;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

}  // namespace se2n
