#include "cardbox/mask.hpp"

#include <bit>
#include <stdexcept>

#include "cardbox/errors.hpp"
#include "cardbox/image.hpp"

namespace cardbox {

SilhouetteMask::SilhouetteMask(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("mask dimensions must be positive");
    words_per_row_ = (width + 63) / 64;
    words_.assign(static_cast<std::size_t>(words_per_row_) * height, 0);
}

void SilhouetteMask::fill_span(int y, int x0, int x1) {
    if (x0 >= x1) return;
    std::uint64_t* row = words_.data() + static_cast<std::size_t>(y) * words_per_row_;
    const int w0 = x0 >> 6;
    const int w1 = (x1 - 1) >> 6;
    const std::uint64_t first = ~0ULL << (static_cast<unsigned>(x0) & 63u);
    const std::uint64_t last = ~0ULL >> (63u - (static_cast<unsigned>(x1 - 1) & 63u));
    if (w0 == w1) {
        row[w0] |= first & last;
        return;
    }
    row[w0] |= first;
    for (int w = w0 + 1; w < w1; ++w) row[w] = ~0ULL;
    row[w1] |= last;
}

void SilhouetteMask::clear() { std::fill(words_.begin(), words_.end(), 0ULL); }

std::uint64_t SilhouetteMask::count() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

void SilhouetteMask::or_with(const SilhouetteMask& other) {
    if (!same_size(other)) throw std::invalid_argument("mask dimension mismatch in or_with");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

std::uint64_t xor_popcount(const SilhouetteMask& a, const SilhouetteMask& b) {
    if (!a.same_size(b)) throw std::invalid_argument("mask dimension mismatch in xor_popcount");
    const auto& wa = a.words();
    const auto& wb = b.words();
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        n += static_cast<std::uint64_t>(std::popcount(wa[i] ^ wb[i]));
    return n;
}

SilhouetteMask xor_difference(const SilhouetteMask& a, const SilhouetteMask& b) {
    if (!a.same_size(b)) throw std::invalid_argument("mask dimension mismatch in xor_difference");
    SilhouetteMask out(a.width(), a.height());
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) out.words()[i] = wa[i] ^ wb[i];
    return out;
}

void save_mask_pgm(const SilhouetteMask& mask, const std::filesystem::path& path) {
    GrayImage img(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x) img.at(x, y) = mask.get(x, y) ? 255 : 0;
    save_gray_pgm(img, path);
}

SilhouetteMask load_mask_pgm(const std::filesystem::path& path) {
    const GrayImage img = load_gray(path);
    SilhouetteMask mask(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (img.at(x, y) != 0) mask.set(x, y, true);
    return mask;
}

}  // namespace cardbox
