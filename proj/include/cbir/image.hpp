#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cbir {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major pixel grid. Dimensions are at least 1x1 and the pixel count
// always equals width * height; the 8-bit channel type bounds values to [0, 255].
template <class Pixel>
class Raster {
public:
    Raster(int width, int height, Pixel fill = Pixel{});
    Raster(int width, int height, std::vector<Pixel> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    const Pixel& at(int x, int y) const { return pixels_[index(x, y)]; }
    Pixel& at(int x, int y) { return pixels_[index(x, y)]; }

    // Edge-replicated read: coordinates outside the grid clamp to the border.
    const Pixel& clamped(int x, int y) const;

    std::span<const Pixel> pixels() const noexcept { return pixels_; }
    std::span<Pixel> pixels() noexcept { return pixels_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t index(int x, int y) const noexcept
    {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<Pixel> pixels_;
};

using RgbImage = Raster<Rgb>;
using GrayImage = Raster<std::uint8_t>;

extern template class Raster<Rgb>;
extern template class Raster<std::uint8_t>;

/// Decodes a binary PPM (P6, maxval 255). Header comments are allowed.
/// Throws Error{decode} naming the bad header field or byte offset.
RgbImage decode_ppm(std::span<const std::uint8_t> bytes);

/// Encodes as "P6\n<w> <h>\n255\n" followed by the raw RGB payload.
std::vector<std::uint8_t> encode_ppm(const RgbImage& img);

RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);

/// BT.601 luma, rounded half away from zero.
std::uint8_t luma(Rgb px) noexcept;
GrayImage to_grayscale(const RgbImage& img);

}  // namespace cbir
