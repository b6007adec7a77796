#pragma once

#include "cbir/image.hpp"
#include "cbir/phong.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbir {

enum class Channel { red, green, blue };

struct ChannelHistogram {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;
};

ChannelHistogram channel_histogram(const RgbImage& img, Channel channel);

struct ChannelStats {
    double mean = 0.0;
    double median = 0.0;  // lower median
    double std_dev = 0.0; // population
};

/// Throws Error{invalid_argument} on an empty histogram.
ChannelStats channel_stats(const ChannelHistogram& h);

// Gray levels -> bins: floor(v * levels / 256).
struct QuantizedImage {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<int> bins;

    int at(int x, int y) const { return bins[static_cast<std::size_t>(y) * width + x]; }
};

QuantizedImage quantize_gray(const GrayImage& gray, int levels);

struct Offset {
    int dx = 1;
    int dy = 0;

    friend bool operator==(const Offset&, const Offset&) = default;
};

// Normalized, non-symmetric gray-level co-occurrence matrix.
class Glcm {
public:
    Glcm(int levels, std::vector<double> p);

    int levels() const noexcept { return levels_; }
    double operator()(int i, int j) const { return p_[static_cast<std::size_t>(i) * levels_ + j]; }
    const std::vector<double>& values() const noexcept { return p_; }

private:
    int levels_;
    std::vector<double> p_;
};

/// Throws Error{empty_pairs} if no pixel pair fits inside the image under the offset.
Glcm glcm(const GrayImage& gray, int levels, Offset offset);

struct TextureFeatures {
    double entropy = 0.0;     // -sum P log2 P
    double contrast = 0.0;
    double energy = 0.0;
    double homogeneity = 0.0;
};

TextureFeatures texture_features(const Glcm& g);

struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<int> gx;
    std::vector<int> gy;
};

// Gx = [-1 0 1; -2 0 2; -1 0 1], Gy = [1 2 1; 0 0 0; -1 -2 -1], correlated
// with the image under edge replication.
inline constexpr std::array<std::array<int, 3>, 3> sobel_x{{{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}}};
inline constexpr std::array<std::array<int, 3>, 3> sobel_y{{{1, 2, 1}, {0, 0, 0}, {-1, -2, -1}}};

GradientField sobel_gradients(const GrayImage& gray);

struct EdgeDensities {
    double vertical = 0.0;   // fraction with |gx| > threshold
    double horizontal = 0.0; // fraction with |gy| > threshold
};

EdgeDensities edge_densities(const GradientField& g, double threshold);

inline constexpr std::size_t feature_count = 15;

// Fixed slot order: r/g/b (mean, median, std), entropy, contrast, energy,
// homogeneity, vertical and horizontal edge density.
using FeatureVector = std::array<double, feature_count>;

inline constexpr std::array<std::string_view, feature_count> feature_names{
    "r_mean", "r_median", "r_std", "g_mean",      "g_median",       "g_std",          "b_mean",        "b_median",
    "b_std",  "entropy",  "contrast", "energy", "homogeneity", "v_edge_density", "h_edge_density",
};

struct ExtractionOptions {
    int levels = 8;
    Offset offset{1, 0};
    double edge_threshold = 255.0;

    void validate() const;

    friend bool operator==(const ExtractionOptions&, const ExtractionOptions&) = default;
};

/// Shades first when `phong` is set, then extracts colour statistics from the
/// RGB image and texture/edge statistics from its grayscale.
FeatureVector extract_features(const RgbImage& img, const std::optional<PhongParams>& phong,
                               const ExtractionOptions& opts = {});

/// Range checks for a raw feature vector (finite, bounded slots).
/// Returns an empty string when valid, otherwise the first violation.
std::string feature_violation(const FeatureVector& v, int levels);

}  // namespace cbir
