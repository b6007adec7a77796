#include "cbir/image.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace cbir {

template <class Pixel>
Raster<Pixel>::Raster(int width, int height, Pixel fill)
    : width_(width), height_(height)
{
    if (width < 1 || height < 1)
        throw Error(ErrorCode::invalid_argument, "image dimensions must be at least 1x1");
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

template <class Pixel>
Raster<Pixel>::Raster(int width, int height, std::vector<Pixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels))
{
    if (width < 1 || height < 1)
        throw Error(ErrorCode::invalid_argument, "image dimensions must be at least 1x1");
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error(ErrorCode::invalid_argument, "pixel count does not match width * height");
}

template <class Pixel>
const Pixel& Raster<Pixel>::clamped(int x, int y) const
{
    return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

template class Raster<Rgb>;
template class Raster<std::uint8_t>;

namespace {

class PpmHeaderReader {
public:
    explicit PpmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t position() const noexcept { return pos_; }

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
                    ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string token()
    {
        skip_space_and_comments();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#')
            out.push_back(static_cast<char>(bytes_[pos_++]));
        return out;
    }

    long number(const char* field)
    {
        const auto at = pos_;
        const auto text = token();
        if (text.empty())
            throw Error(ErrorCode::decode, std::string("missing ") + field + " at byte offset " + std::to_string(at));
        if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) || text.size() > 9)
            throw Error(ErrorCode::decode, std::string("invalid ") + field + " '" + text + "'");
        return std::stol(text);
    }

    // Exactly one whitespace byte separates maxval from the payload.
    void end_of_header()
    {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw Error(ErrorCode::decode, "expected whitespace after maxval at byte offset " + std::to_string(pos_));
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

RgbImage decode_ppm(std::span<const std::uint8_t> bytes)
{
    PpmHeaderReader reader(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6')
        throw Error(ErrorCode::decode, "magic: expected 'P6'");
    reader.token();

    const long width = reader.number("width");
    const long height = reader.number("height");
    const long maxval = reader.number("maxval");
    if (width < 1)
        throw Error(ErrorCode::decode, "width must be positive");
    if (height < 1)
        throw Error(ErrorCode::decode, "height must be positive");
    if (maxval != 255)
        throw Error(ErrorCode::decode, "maxval must be 255, got " + std::to_string(maxval));
    reader.end_of_header();

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t start = reader.position();
    const std::size_t need = count * 3;
    if (bytes.size() - start < need)
        throw Error(ErrorCode::decode, "truncated pixel payload: expected " + std::to_string(need) + " bytes from offset " +
                                           std::to_string(start) + ", stream ends at byte offset " +
                                           std::to_string(bytes.size()));

    std::vector<Rgb> pixels(count);
    auto src = bytes.begin() + static_cast<std::ptrdiff_t>(start);
    for (auto& px : pixels) {
        px.r = *src++;
        px.g = *src++;
        px.b = *src++;
    }
    return RgbImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& img)
{
    const std::string header = "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.size() * 3);
    for (const auto& px : img.pixels()) {
        out.push_back(px.r);
        out.push_back(px.g);
        out.push_back(px.b);
    }
    return out;
}

RgbImage read_ppm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, "cannot open " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_ppm(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.message());
    }
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img)
{
    const auto bytes = encode_ppm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::io, "short write to " + path.string());
}

std::uint8_t luma(Rgb px) noexcept
{
    // Integer form of 0.299/0.587/0.114; +500 rounds half up, which equals
    // half-away-from-zero on non-negative values. Max is 255 so no clamp needed.
    const int weighted = 299 * px.r + 587 * px.g + 114 * px.b;
    return static_cast<std::uint8_t>((weighted + 500) / 1000);
}

GrayImage to_grayscale(const RgbImage& img)
{
    GrayImage out(img.width(), img.height());
    std::transform(img.pixels().begin(), img.pixels().end(), out.pixels().begin(), luma);
    return out;
}

}  // namespace cbir
