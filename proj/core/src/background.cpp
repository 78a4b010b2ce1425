#include "cardbox/background.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "cardbox/errors.hpp"

namespace cardbox {

namespace {
constexpr char kMagic[8] = {'C', 'B', 'X', 'B', 'G', '0', '0', '1'};
}

BackgroundModel learn_background(std::span<const GrayImage> frames) {
    if (frames.size() < 2) throw std::invalid_argument("need at least 2 background frames");
    const int width = frames[0].width;
    const int height = frames[0].height;
    for (const GrayImage& f : frames)
        if (f.width != width || f.height != height)
            throw std::invalid_argument("background frames have mismatched dimensions");

    const std::size_t n_px = static_cast<std::size_t>(width) * height;
    std::vector<double> sum(n_px, 0.0), sum_sq(n_px, 0.0);
    for (const GrayImage& f : frames) {
        for (std::size_t i = 0; i < n_px; ++i) {
            const double v = f.pixels[i];
            sum[i] += v;
            sum_sq[i] += v * v;
        }
    }

    BackgroundModel bg;
    bg.width = width;
    bg.height = height;
    bg.frame_count = static_cast<int>(frames.size());
    bg.mean.resize(n_px);
    bg.stddev.resize(n_px);
    const double n = static_cast<double>(frames.size());
    for (std::size_t i = 0; i < n_px; ++i) {
        const double m = sum[i] / n;
        bg.mean[i] = m;
        bg.stddev[i] = std::sqrt(std::max(0.0, sum_sq[i] / n - m * m));
    }
    return bg;
}

SilhouetteMask segment(const BackgroundModel& bg, const GrayImage& frame, double sigma_floor) {
    if (frame.width != bg.width || frame.height != bg.height)
        throw std::invalid_argument("frame dimensions do not match background model");
    if (!(sigma_floor >= 0.0)) throw std::invalid_argument("sigma_floor must be >= 0");

    SilhouetteMask mask(bg.width, bg.height);
    for (int y = 0; y < bg.height; ++y) {
        for (int x = 0; x < bg.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * bg.width + x;
            const double diff = std::abs(bg.mean[i] - static_cast<double>(frame.pixels[i]));
            if (!(diff < 2.0 * std::max(bg.stddev[i], sigma_floor))) mask.set(x, y, true);
        }
    }
    return mask;
}

void save_background(const BackgroundModel& bg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write background model: " + path.string());
    out.write(kMagic, sizeof kMagic);
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(bg.width),
                                   static_cast<std::uint32_t>(bg.height),
                                   static_cast<std::uint32_t>(bg.frame_count)};
    out.write(reinterpret_cast<const char*>(dims), sizeof dims);
    out.write(reinterpret_cast<const char*>(bg.mean.data()),
              static_cast<std::streamsize>(bg.mean.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(bg.stddev.data()),
              static_cast<std::streamsize>(bg.stddev.size() * sizeof(double)));
    if (!out) throw DataError("short write: " + path.string());
}

BackgroundModel load_background(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open background model: " + path.string());
    char magic[8];
    in.read(magic, sizeof magic);
    if (in.gcount() != sizeof magic || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw DataError("not a background model file: " + path.string());
    std::uint32_t dims[3];
    in.read(reinterpret_cast<char*>(dims), sizeof dims);
    if (in.gcount() != sizeof dims) throw DataError("truncated background model: " + path.string());

    BackgroundModel bg;
    bg.width = static_cast<int>(dims[0]);
    bg.height = static_cast<int>(dims[1]);
    bg.frame_count = static_cast<int>(dims[2]);
    if (bg.width <= 0 || bg.height <= 0 || bg.frame_count < 2)
        throw DataError("invalid background model header: " + path.string());
    const std::size_t n_px = static_cast<std::size_t>(bg.width) * bg.height;
    bg.mean.resize(n_px);
    bg.stddev.resize(n_px);
    in.read(reinterpret_cast<char*>(bg.mean.data()),
            static_cast<std::streamsize>(n_px * sizeof(double)));
    in.read(reinterpret_cast<char*>(bg.stddev.data()),
            static_cast<std::streamsize>(n_px * sizeof(double)));
    if (!in) throw DataError("truncated background model: " + path.string());
    return bg;
}

}  // namespace cardbox
