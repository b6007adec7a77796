#include "cbir/features.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace cbir {

ChannelHistogram channel_histogram(const RgbImage& img, Channel channel)
{
    ChannelHistogram h;
    for (const auto& px : img.pixels()) {
        const std::uint8_t v = channel == Channel::red ? px.r : channel == Channel::green ? px.g : px.b;
        ++h.counts[v];
    }
    h.total = img.size();
    return h;
}

ChannelStats channel_stats(const ChannelHistogram& h)
{
    if (h.total == 0)
        throw Error(ErrorCode::invalid_argument, "channel statistics need at least one pixel");
    const double total = static_cast<double>(h.total);

    double sum = 0.0;
    for (int v = 0; v < 256; ++v)
        sum += static_cast<double>(v) * static_cast<double>(h.counts[v]);
    const double mean = sum / total;

    double sq = 0.0;
    for (int v = 0; v < 256; ++v) {
        const double d = v - mean;
        sq += static_cast<double>(h.counts[v]) * d * d;
    }

    const std::uint64_t half = (h.total + 1) / 2;
    std::uint64_t cumulative = 0;
    int median = 255;
    for (int v = 0; v < 256; ++v) {
        cumulative += h.counts[v];
        if (cumulative >= half) {
            median = v;
            break;
        }
    }
    return {mean, static_cast<double>(median), std::sqrt(sq / total)};
}

QuantizedImage quantize_gray(const GrayImage& gray, int levels)
{
    if (levels < 2 || levels > 256)
        throw Error(ErrorCode::invalid_argument, "levels must be in [2, 256], got " + std::to_string(levels));
    QuantizedImage q{gray.width(), gray.height(), levels, {}};
    q.bins.reserve(gray.size());
    for (const auto v : gray.pixels())
        q.bins.push_back(v * levels / 256);
    return q;
}

Glcm::Glcm(int levels, std::vector<double> p) : levels_(levels), p_(std::move(p))
{
    if (levels < 2 || p_.size() != static_cast<std::size_t>(levels) * static_cast<std::size_t>(levels))
        throw Error(ErrorCode::invalid_argument, "co-occurrence matrix must be levels x levels");
}

Glcm glcm(const GrayImage& gray, int levels, Offset offset)
{
    const auto q = quantize_gray(gray, levels);
    // Pixel range whose neighbour (x+dx, y+dy) is also in bounds.
    const int x_begin = std::max(0, -offset.dx);
    const int x_end = std::min(q.width, q.width - offset.dx);
    const int y_begin = std::max(0, -offset.dy);
    const int y_end = std::min(q.height, q.height - offset.dy);
    if (x_begin >= x_end || y_begin >= y_end)
        throw Error(ErrorCode::empty_pairs, "no pixel pairs for offset (" + std::to_string(offset.dx) + ", " +
                                                std::to_string(offset.dy) + ") in a " + std::to_string(q.width) +
                                                "x" + std::to_string(q.height) + " image");

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(levels) * levels, 0);
    for (int y = y_begin; y < y_end; ++y)
        for (int x = x_begin; x < x_end; ++x)
            ++counts[static_cast<std::size_t>(q.at(x, y)) * levels + q.at(x + offset.dx, y + offset.dy)];

    const double pairs = static_cast<double>(x_end - x_begin) * static_cast<double>(y_end - y_begin);
    std::vector<double> p(counts.size());
    std::transform(counts.begin(), counts.end(), p.begin(), [&](std::uint64_t c) { return static_cast<double>(c) / pairs; });
    return Glcm(levels, std::move(p));
}

TextureFeatures texture_features(const Glcm& g)
{
    TextureFeatures t;
    for (int i = 0; i < g.levels(); ++i) {
        for (int j = 0; j < g.levels(); ++j) {
            const double p = g(i, j);
            const int diff = i - j;
            if (p > 0.0)
                t.entropy -= p * std::log2(p);
            t.contrast += static_cast<double>(diff * diff) * p;
            t.energy += p * p;
            t.homogeneity += p / (1.0 + std::abs(diff));
        }
    }
    return t;
}

GradientField sobel_gradients(const GrayImage& gray)
{
    GradientField g{gray.width(), gray.height(), {}, {}};
    g.gx.reserve(gray.size());
    g.gy.reserve(gray.size());
    for (int y = 0; y < gray.height(); ++y) {
        for (int x = 0; x < gray.width(); ++x) {
            int sx = 0;
            int sy = 0;
            for (int j = 0; j < 3; ++j) {
                for (int i = 0; i < 3; ++i) {
                    const int v = gray.clamped(x + i - 1, y + j - 1);
                    sx += sobel_x[j][i] * v;
                    sy += sobel_y[j][i] * v;
                }
            }
            g.gx.push_back(sx);
            g.gy.push_back(sy);
        }
    }
    return g;
}

EdgeDensities edge_densities(const GradientField& g, double threshold)
{
    if (!(threshold > 0.0))
        throw Error(ErrorCode::invalid_argument, "edge threshold must be > 0");
    const auto n = static_cast<double>(g.width) * static_cast<double>(g.height);
    if (n <= 0.0 || g.gx.size() != g.gy.size() || static_cast<double>(g.gx.size()) != n)
        throw Error(ErrorCode::invalid_argument, "gradient field size does not match its dimensions");
    auto above = [threshold](int v) { return std::abs(v) > threshold; };
    const auto v = std::count_if(g.gx.begin(), g.gx.end(), above);
    const auto h = std::count_if(g.gy.begin(), g.gy.end(), above);
    return {static_cast<double>(v) / n, static_cast<double>(h) / n};
}

void ExtractionOptions::validate() const
{
    if (levels < 2 || levels > 256)
        throw Error(ErrorCode::invalid_argument, "levels must be in [2, 256], got " + std::to_string(levels));
    if (offset.dx == 0 && offset.dy == 0)
        throw Error(ErrorCode::invalid_argument, "co-occurrence offset must be non-zero");
    if (!(edge_threshold > 0.0) || !std::isfinite(edge_threshold))
        throw Error(ErrorCode::invalid_argument, "edge threshold must be > 0");
}

FeatureVector extract_features(const RgbImage& input, const std::optional<PhongParams>& phong,
                               const ExtractionOptions& opts)
{
    opts.validate();
    const RgbImage img = phong ? shade_image(input, *phong) : input;

    FeatureVector v{};
    std::size_t slot = 0;
    for (const auto ch : {Channel::red, Channel::green, Channel::blue}) {
        const auto s = channel_stats(channel_histogram(img, ch));
        v[slot++] = s.mean;
        v[slot++] = s.median;
        v[slot++] = s.std_dev;
    }

    const auto gray = to_grayscale(img);
    const auto t = texture_features(glcm(gray, opts.levels, opts.offset));
    v[slot++] = t.entropy;
    v[slot++] = t.contrast;
    v[slot++] = t.energy;
    v[slot++] = t.homogeneity;

    const auto e = edge_densities(sobel_gradients(gray), opts.edge_threshold);
    v[slot++] = e.vertical;
    v[slot++] = e.horizontal;
    return v;
}

std::string feature_violation(const FeatureVector& v, int levels)
{
    for (std::size_t d = 0; d < feature_count; ++d)
        if (!std::isfinite(v[d]))
            return std::string(feature_names[d]) + " is not finite";

    auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
    constexpr double slack = 1e-9;
    for (std::size_t c = 0; c < 3; ++c) {
        const std::size_t base = 3 * c;
        if (!in(v[base], 0.0, 255.0))
            return std::string(feature_names[base]) + " outside [0, 255]";
        if (!in(v[base + 1], 0.0, 255.0))
            return std::string(feature_names[base + 1]) + " outside [0, 255]";
        if (!in(v[base + 2], 0.0, 127.5))
            return std::string(feature_names[base + 2]) + " outside [0, 127.5]";
    }
    const double lv = static_cast<double>(levels);
    if (!in(v[9], 0.0, 2.0 * std::log2(lv) + slack))
        return "entropy outside [0, 2 log2(levels)]";
    if (!in(v[10], 0.0, (lv - 1.0) * (lv - 1.0) + slack))
        return "contrast outside [0, (levels-1)^2]";
    if (!(v[11] > 0.0 && v[11] <= 1.0 + slack))
        return "energy outside (0, 1]";
    if (!(v[12] > 0.0 && v[12] <= 1.0 + slack))
        return "homogeneity outside (0, 1]";
    if (!in(v[13], 0.0, 1.0))
        return "v_edge_density outside [0, 1]";
    if (!in(v[14], 0.0, 1.0))
        return "h_edge_density outside [0, 1]";
    return {};
}

}  // namespace cbir
