#ifndef CARDBOX_BACKGROUND_HPP_
#define CARDBOX_BACKGROUND_HPP_

#include <filesystem>
#include <span>
#include <vector>

#include "cardbox/image.hpp"
#include "cardbox/mask.hpp"

namespace cardbox {

/// Per-pixel brightness statistics of the static background.
struct BackgroundModel {
    int width = 0;
    int height = 0;
    int frame_count = 0;
    std::vector<double> mean;    // row-major, brightness levels
    std::vector<double> stddev;  // population standard deviation, >= 0

    double mean_at(int x, int y) const { return mean[static_cast<std::size_t>(y) * width + x]; }
    double stddev_at(int x, int y) const {
        return stddev[static_cast<std::size_t>(y) * width + x];
    }
};

/// Learns per-pixel mean and population standard deviation from at least
/// two equally sized frames. Throws std::invalid_argument otherwise.
BackgroundModel learn_background(std::span<const GrayImage> frames);

/// Default guard against zero-variance pixels: with a floor of 0 the
/// threshold test below reduces to the plain 2-sigma rule.
constexpr double kDefaultSigmaFloor = 2.0;

/// Thresholds a frame against the background: pixel is background (0) iff
/// |mean - I| < 2 * max(stddev, sigma_floor), else foreground (1).
SilhouetteMask segment(const BackgroundModel& bg, const GrayImage& frame,
                       double sigma_floor = kDefaultSigmaFloor);

/// Binary container round trip (magic header, dimensions, float64 mean and
/// stddev planes, little-endian).
void save_background(const BackgroundModel& bg, const std::filesystem::path& path);
BackgroundModel load_background(const std::filesystem::path& path);

}  // namespace cardbox

#endif  // CARDBOX_BACKGROUND_HPP_
