#include "cardbox/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "cardbox/errors.hpp"

#ifdef CARDBOX_WITH_PNG
#include <png.h>
#endif

namespace cardbox {

namespace {

// Skips PNM whitespace and '#' comment lines, then reads one integer token.
int read_pnm_int(std::istream& in, const std::filesystem::path& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF) throw DataError("truncated PNM header: " + path.string());
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = in.get();
    }
    if (!any) throw DataError("malformed PNM header: " + path.string());
    return value;
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '5' && m1 != '2'))
        throw DataError("not a PGM (P5/P2) file: " + path.string());
    const bool binary = (m1 == '5');
    const int width = read_pnm_int(in, path);
    const int height = read_pnm_int(in, path);
    const int maxval = read_pnm_int(in, path);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
        throw DataError("unsupported PGM geometry/maxval: " + path.string());

    GrayImage img(width, height);
    if (binary) {
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(img.pixels.size()));
        if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
            throw DataError("truncated PGM pixel data: " + path.string());
    } else {
        for (auto& px : img.pixels) px = static_cast<std::uint8_t>(read_pnm_int(in, path));
    }
    return img;
}

#ifdef CARDBOX_WITH_PNG
GrayImage load_png(const std::filesystem::path& path) {
    std::FILE* fp = std::fopen(path.string().c_str(), "rb");
    if (!fp) throw DataError("cannot open image: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("libpng init failed for: " + path.string());
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw DataError("malformed PNG: " + path.string());
    }

    png_init_io(png, fp);
    png_read_info(png, info);

    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    std::vector<std::uint8_t> row(png_get_rowbytes(png, info));
    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < width; ++x) {
            if (channels >= 3) {
                const double luma = 0.299 * row[x * channels] + 0.587 * row[x * channels + 1] +
                                    0.114 * row[x * channels + 2];
                img.at(static_cast<int>(x), static_cast<int>(y)) =
                    static_cast<std::uint8_t>(std::lround(luma));
            } else {
                img.at(static_cast<int>(x), static_cast<int>(y)) = row[x * channels];
            }
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}
#endif

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png") {
#ifdef CARDBOX_WITH_PNG
        return load_png(path);
#else
        throw DataError("PNG support not compiled in, convert to PGM: " + path.string());
#endif
    }
    return load_pgm(path);
}

void save_gray_pgm(const GrayImage& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write image: " + path.string());
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw DataError("short write: " + path.string());
}

std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw DataError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace cardbox
