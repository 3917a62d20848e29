#pragma once

#include "se2n/raster.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace se2n {

class ImageReadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Raster read_pgm(const std::filesystem::path& path);
/// 8-bit gray or RGB PNG; color inputs go through to_grayscale.
Raster read_png(const std::filesystem::path& path);
/// Dispatches on extension (.pgm / .png).
Raster read_image(const std::filesystem::path& path);

/// P5, 8-bit; intensities are rounded and clamped to [0, 255].
void write_pgm(const std::filesystem::path& path, const Raster& f);

struct DatasetLoad {
    std::vector<LabeledSample> samples;
    std::vector<std::string> warnings;
};

/// COIL-100 layout: files `obj<i>__<deg>.png` (or .pgm). class_id = i - 1,
/// pose_tag = deg. Malformed names are skipped with a warning; unreadable
/// files throw ImageReadError. Lexicographic file-name order.
DatasetLoad load_coil_directory(const std::filesystem::path& dir);

/// Reads `manifest.csv` (filename,class_id,pose_deg) when present, otherwise
/// falls back to the COIL layout.
DatasetLoad load_dataset(const std::filesystem::path& dir);

/// Writes one PGM per sample plus manifest.csv. `header` (without the
/// leading '#') becomes the manifest's first line.
void write_dataset(const std::filesystem::path& dir, const std::vector<LabeledSample>& samples,
                   std::string_view header);

// RFC-4180 helpers.
std::string csv_escape(std::string_view field);
std::vector<std::string> csv_split(std::string_view line);

}  // namespace se2n
