#ifndef CARDBOX_MASK_HPP_
#define CARDBOX_MASK_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cardbox {

/// Binary silhouette image, one bit per pixel. Serves both as the segmented
/// observation and as the rendered model image. Rows are packed into 64-bit
/// words so XOR costs and span fills run over whole words; padding bits past
/// the image width are kept at zero.
class SilhouetteMask {
public:
    SilhouetteMask() = default;
    SilhouetteMask(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int words_per_row() const { return words_per_row_; }

    bool get(int x, int y) const {
        return (words_[static_cast<std::size_t>(y) * words_per_row_ + (x >> 6)] >>
                (static_cast<unsigned>(x) & 63u)) &
               1u;
    }

    void set(int x, int y, bool value) {
        std::uint64_t& w = words_[static_cast<std::size_t>(y) * words_per_row_ + (x >> 6)];
        const std::uint64_t bit = 1ULL << (static_cast<unsigned>(x) & 63u);
        if (value)
            w |= bit;
        else
            w &= ~bit;
    }

    /// Sets pixels x in [x0, x1) of row y. Callers pass clipped coordinates.
    void fill_span(int y, int x0, int x1);

    void clear();

    /// Number of foreground pixels.
    std::uint64_t count() const;

    /// Pixel-wise logical OR with another mask of identical dimensions.
    void or_with(const SilhouetteMask& other);

    bool same_size(const SilhouetteMask& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const SilhouetteMask& other) const {
        return width_ == other.width_ && height_ == other.height_ && words_ == other.words_;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

private:
    int width_ = 0;
    int height_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Counts pixels where the two masks disagree (XOR popcount).
/// Throws std::invalid_argument on dimension mismatch.
std::uint64_t xor_popcount(const SilhouetteMask& a, const SilhouetteMask& b);

/// Mask of the disagreeing pixels, for overlay dumps.
SilhouetteMask xor_difference(const SilhouetteMask& a, const SilhouetteMask& b);

/// Binary PGM (P5) round trip: 0 = background, 255 = foreground.
/// Loading treats any nonzero sample as foreground.
void save_mask_pgm(const SilhouetteMask& mask, const std::filesystem::path& path);
SilhouetteMask load_mask_pgm(const std::filesystem::path& path);

}  // namespace cardbox

#endif  // CARDBOX_MASK_HPP_
