#pragma once

#include "se2n/core.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace se2n {

/// Frequencies are expressed in bins of the padded spectrum; multiply by
/// Spectrum::freq_step to get physical angular frequencies.
struct GridConfig {
    int N = 6;
    int window_bins = 16;   // square window side, centered on DC
    double step_bins = 1.0; // hexagonal lattice spacing
    int pad_factor = 2;     // recorded in the manifest only
};

/// Point of the hexagonal lattice a*(s, 0) + b*(s/2, s*sqrt(3)/2).
struct LatticePoint {
    int a = 0, b = 0;
    Frequency bins = Frequency::Zero();
};

struct HexGrid {
    GridConfig config;
    /// Lattice points in the window and the slice {radius > 0,
    /// angle in [0, 2*pi/N)}, sorted by (radius, angle).
    std::vector<LatticePoint> points;
    /// (i, j), i <= j, with points i, j and their sum inside the window.
    std::vector<std::pair<int, int>> pairs;
    /// Same condition, all ordered (i, j); used when h ranges over Z_N.
    std::vector<std::pair<int, int>> ordered_pairs;
    std::string manifest_csv;
    std::string manifest_hash;  // SHA-256 hex of manifest_csv

    LatticePoint sum(int i, int j) const;
    Frequency physical(const LatticePoint& p, const Vec2& freq_step) const {
        return p.bins.cwiseProduct(freq_step);
    }
};

Frequency lattice_point(int a, int b, double step);
bool in_window(const Frequency& bins, int window_bins);

HexGrid build_hex_grid(const GridConfig& config);

std::string sha256_hex(std::string_view bytes);

}  // namespace se2n
