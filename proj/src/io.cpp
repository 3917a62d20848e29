#include "se2n/io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <sstream>

namespace se2n {

namespace fs = std::filesystem;

namespace {

std::string read_token(std::istream& in) {
    std::string tok;
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            std::string skip;
            std::getline(in, skip);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(ch);
    }
    return tok;
}

}  // namespace

Raster read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageReadError("cannot open " + path.string());
    if (read_token(in) != "P5") throw ImageReadError(path.string() + ": not a binary PGM (P5)");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(read_token(in));
        h = std::stoi(read_token(in));
        maxval = std::stoi(read_token(in));
    } catch (const std::exception&) {
        throw ImageReadError(path.string() + ": malformed PGM header");
    }
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) {
        throw ImageReadError(path.string() + ": unsupported PGM geometry or depth");
    }
    std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
        throw ImageReadError(path.string() + ": truncated PGM data");
    }
    RealGrid px(h, w);
    for (Eigen::Index i = 0; i < px.size(); ++i) px.data()[i] = buf[static_cast<std::size_t>(i)];
    return Raster(std::move(px));
}

void write_pgm(const fs::path& path, const Raster& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "P5\n" << f.width() << ' ' << f.height() << "\n255\n";
    std::vector<unsigned char> buf(static_cast<std::size_t>(f.pixels.size()));
    for (Eigen::Index i = 0; i < f.pixels.size(); ++i) {
        buf[static_cast<std::size_t>(i)] =
            static_cast<unsigned char>(std::clamp(std::lround(f.pixels.data()[i]), 0L, 255L));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

Raster read_png(const fs::path& path) {
    std::unique_ptr<FILE, decltype(&std::fclose)> fp(std::fopen(path.c_str(), "rb"), &std::fclose);
    if (!fp) throw ImageReadError("cannot open " + path.string());
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageReadError("libpng initialisation failed");
    }
    std::vector<png_bytep> rows;
    std::vector<unsigned char> data;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ImageReadError(path.string() + ": invalid PNG");
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_packing(png);
    png_set_palette_to_rgb(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    data.resize(stride * static_cast<std::size_t>(h));
    rows.resize(static_cast<std::size_t>(h));
    for (int r = 0; r < h; ++r) rows[static_cast<std::size_t>(r)] = data.data() + stride * static_cast<std::size_t>(r);
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    if (channels == 1) {
        RealGrid px(h, w);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) px(r, c) = rows[static_cast<std::size_t>(r)][c];
        return Raster(std::move(px));
    }
    if (channels < 3) throw ImageReadError(path.string() + ": unsupported PNG channel layout");
    RgbImage rgb{RealGrid(h, w), RealGrid(h, w), RealGrid(h, w)};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const png_bytep p = rows[static_cast<std::size_t>(r)] + static_cast<std::ptrdiff_t>(c) * channels;
            rgb.r(r, c) = p[0];
            rgb.g(r, c) = p[1];
            rgb.b(r, c) = p[2];
        }
    }
    return to_grayscale(rgb);
}

Raster read_image(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm") return read_pgm(path);
    if (ext == ".png") return read_png(path);
    throw ImageReadError(path.string() + ": unsupported image format");
}

DatasetLoad load_coil_directory(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    static const std::regex pattern(R"(obj([0-9]+)__([0-9]+)\.(png|pgm|PNG|PGM))");
    DatasetLoad out;
    for (const auto& name : names) {
        if (name == "manifest.csv") continue;
        std::smatch m;
        if (!std::regex_match(name, m, pattern) || std::stoi(m[1].str()) < 1) {
            out.warnings.push_back("skipping malformed file name: " + name);
            continue;
        }
        LabeledSample s;
        s.raster = read_image(dir / name);
        s.class_id = std::stoi(m[1].str()) - 1;
        s.pose_tag = m[2].str();
        s.name = name;
        out.samples.push_back(std::move(s));
    }
    return out;
}

DatasetLoad load_dataset(const fs::path& dir) {
    const fs::path manifest = dir / "manifest.csv";
    if (!fs::exists(manifest)) return load_coil_directory(dir);
    std::ifstream in(manifest);
    if (!in) throw ImageReadError("cannot open " + manifest.string());
    DatasetLoad out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto fields = csv_split(line);
        if (fields.size() < 2) {
            out.warnings.push_back("skipping malformed manifest row: " + line);
            continue;
        }
        LabeledSample s;
        s.raster = read_image(dir / fields[0]);
        s.class_id = std::stoi(fields[1]);
        if (fields.size() > 2 && !fields[2].empty()) s.pose_tag = fields[2];
        s.name = fields[0];
        out.samples.push_back(std::move(s));
    }
    return out;
}

void write_dataset(const fs::path& dir, const std::vector<LabeledSample>& samples, std::string_view header) {
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.csv", std::ios::binary);
    if (!manifest) throw std::runtime_error("cannot write manifest in " + dir.string());
    manifest << '#' << header << '\n' << "filename,class_id,pose_deg\n";
    for (const auto& s : samples) {
        const std::string file = s.name + ".pgm";
        write_pgm(dir / file, s.raster);
        manifest << csv_escape(file) << ',' << s.class_id << ',' << csv_escape(s.pose_tag.value_or("")) << '\n';
    }
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace se2n
