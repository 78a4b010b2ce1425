#ifndef CARDBOX_IMAGE_HPP_
#define CARDBOX_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cardbox {

/// 8-bit grayscale image; pixel (x, y) at row-major index y * width + x.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Loads a grayscale frame. PGM (P5/P2) is always supported; PNG when the
/// library is built with libpng. Color PNG input is converted with BT.601
/// luma (0.299 R + 0.587 G + 0.114 B), rounded to nearest.
GrayImage load_gray(const std::filesystem::path& path);

void save_gray_pgm(const GrayImage& image, const std::filesystem::path& path);

/// Lists frame files of a directory in name order (frame_%05d numbering
/// sorts correctly). Only .pgm/.png entries are considered.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir);

}  // namespace cardbox

#endif  // CARDBOX_IMAGE_HPP_
