#include "se2n/descriptors.hpp"

#include "se2n/baselines.hpp"

#include <algorithm>

namespace se2n {

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::PS: return "PS";
        case Kind::BS: return "BS";
        case Kind::RPS: return "RPS";
        case Kind::RBS: return "RBS";
        case Kind::RPS_BS: return "RPS+BS";
        case Kind::CYCLIC_BS: return "CYCLIC_BS";
        case Kind::HU: return "HU";
        case Kind::ZERNIKE: return "ZERNIKE";
        case Kind::AFMT: return "AFMT";
    }
    return "?";
}

Kind parse_kind(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    for (Kind k : {Kind::PS, Kind::BS, Kind::RPS, Kind::RBS, Kind::RPS_BS, Kind::CYCLIC_BS, Kind::HU, Kind::ZERNIKE,
                   Kind::AFMT}) {
        if (to_string(k) == up) return k;
    }
    if (up == "RPS_BS") return Kind::RPS_BS;
    throw std::invalid_argument("unknown descriptor kind: " + name);
}

std::string to_string(Encoding e) { return e == Encoding::ReIm ? "re_im" : "modulus"; }

Encoding parse_encoding(const std::string& name) {
    if (name == "re_im") return Encoding::ReIm;
    if (name == "modulus") return Encoding::Modulus;
    throw std::invalid_argument("unknown encoding: " + name);
}

bool is_spectral(Kind kind) { return kind != Kind::HU && kind != Kind::ZERNIKE && kind != Kind::AFMT; }

std::size_t feature_length(Kind kind, const HexGrid& grid, Encoding encoding) {
    const std::size_t c = encoding == Encoding::ReIm ? 2 : 1;
    const std::size_t N = static_cast<std::size_t>(grid.config.N);
    switch (kind) {
        case Kind::PS: return grid.points.size();
        case Kind::RPS: return grid.points.size() * N * c;
        case Kind::BS: return grid.pairs.size() * c;
        case Kind::RBS: return grid.ordered_pairs.size() * N * c;
        case Kind::RPS_BS: return feature_length(Kind::RPS, grid, encoding) + feature_length(Kind::BS, grid, encoding);
        case Kind::CYCLIC_BS: return grid.ordered_pairs.size() * N * N * c;
        default: throw std::invalid_argument("feature_length: not a spectral kind");
    }
}

Spectrum descriptor_spectrum(const Raster& f, const GridConfig& grid, bool center) {
    Spectrum spec = dft2_shifted(f, grid.pad_factor);
    if (center) spec = center_spectrally(spec, barycenter(f));
    return spec;
}

FeatureVector extract_features(const Raster& f, const HexGrid& grid, const DescriptorConfig& config, Kind kind) {
    FeatureVector fv;
    fv.kind = kind;
    fv.manifest_hash = grid.manifest_hash;
    switch (kind) {
        case Kind::HU: fv.values = hu_features(f); break;
        case Kind::ZERNIKE: fv.values = zernike_features(f); break;
        case Kind::AFMT: fv.values = afmt_features(f); break;
        default: {
            const Spectrum spec = descriptor_spectrum(f, grid.config, config.center);
            // Grid bins are bins of the padded spectrum; freq_step already
            // accounts for the padding.
            fv.values = invariants_from_sampler(spec, grid, spec.freq_step, kind, config.encoding);
        }
    }
    if (!fv.values.allFinite()) throw std::runtime_error("extract_features: non-finite feature value");
    return fv;
}

}  // namespace se2n
