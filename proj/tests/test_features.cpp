#include "oracles.hpp"

#include "cbir/error.hpp"
#include "cbir/features.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace cbir;

namespace {

Glcm glcm_from(int levels, std::initializer_list<std::tuple<int, int, double>> cells)
{
    std::vector<double> p(static_cast<std::size_t>(levels) * levels, 0.0);
    for (const auto& [i, j, v] : cells)
        p[static_cast<std::size_t>(i) * levels + j] = v;
    return Glcm(levels, p);
}

RgbImage image_from_values(const std::vector<int>& values)
{
    RgbImage img(static_cast<int>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto v = static_cast<std::uint8_t>(values[i]);
        img.at(static_cast<int>(i), 0) = {v, 0, 0};
    }
    return img;
}

}  // namespace

TEST_CASE("channel histogram")
{
    const RgbImage red(2, 2, {255, 0, 0});
    const auto r = channel_histogram(red, Channel::red);
    CHECK(r.counts[255] == 4);
    CHECK(r.total == 4);
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::uint64_t{0}) == 4);
    const auto g = channel_histogram(red, Channel::green);
    CHECK(g.counts[0] == 4);

    oracle::Rng rng(1);
    const auto img = oracle::random_rgb(rng, 8, 8);
    std::array<std::uint64_t, 256> tally{};
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            ++tally[img.at(x, y).b];
    CHECK(channel_histogram(img, Channel::blue).counts == tally);
}

TEST_CASE("channel statistics")
{
    auto stats = [](const std::vector<int>& v) { return channel_stats(channel_histogram(image_from_values(v), Channel::red)); };

    const auto flat = stats({128, 128, 128});
    CHECK(flat.mean == 128.0);
    CHECK(flat.median == 128.0);
    CHECK(flat.std_dev == 0.0);

    const auto two = stats({0, 255});
    CHECK(two.mean == 127.5);
    CHECK(two.median == 0.0);
    CHECK(two.std_dev == 127.5);

    const auto four = stats({10, 20, 30, 40});
    CHECK(four.mean == 25.0);
    CHECK(four.median == 20.0);
    CHECK(four.std_dev == doctest::Approx(11.18034).epsilon(1e-6));

    ChannelHistogram empty;
    CHECK_THROWS_AS(channel_stats(empty), Error);

    oracle::Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> values(1 + rng() % 40);
        for (auto& v : values)
            v = static_cast<int>(rng() % 256);
        const auto got = stats(values);
        const auto want = oracle::stats_of(values);
        CHECK(got.mean == doctest::Approx(want.mean).epsilon(1e-12));
        CHECK(got.median == want.median);
        CHECK(got.std_dev == doctest::Approx(want.std_dev).epsilon(1e-12));
        const bool single_bin = std::all_of(values.begin(), values.end(), [&](int v) { return v == values[0]; });
        CHECK((got.std_dev == 0.0) == single_bin);
    }
}

TEST_CASE("color features ignore pixel order")
{
    oracle::Rng rng(12);
    auto img = oracle::random_rgb(rng, 12, 12);
    const auto before = extract_features(img, std::nullopt);
    std::shuffle(img.pixels().begin(), img.pixels().end(), rng);
    const auto after = extract_features(img, std::nullopt);
    for (std::size_t d = 0; d < 9; ++d)
        CHECK(after[d] == before[d]);
}

TEST_CASE("gray quantization")
{
    GrayImage g(3, 1, std::vector<std::uint8_t>{0, 255, 128});
    const auto q = quantize_gray(g, 8);
    CHECK(q.at(0, 0) == 0);
    CHECK(q.at(1, 0) == 7);
    CHECK(q.at(2, 0) == 4);
    for (int levels : {2, 3, 7, 64, 256}) {
        GrayImage all(256, 1);
        for (int v = 0; v < 256; ++v)
            all.at(v, 0) = static_cast<std::uint8_t>(v);
        const auto bins = quantize_gray(all, levels).bins;
        CHECK(*std::min_element(bins.begin(), bins.end()) == 0);
        CHECK(*std::max_element(bins.begin(), bins.end()) == levels - 1);
        CHECK(std::is_sorted(bins.begin(), bins.end()));
    }
    CHECK_THROWS_AS(quantize_gray(g, 1), Error);
    CHECK_THROWS_AS(quantize_gray(g, 257), Error);
}

TEST_CASE("co-occurrence matrix")
{
    const auto zeros = glcm(GrayImage(2, 1, std::vector<std::uint8_t>{0, 0}), 8, {1, 0});
    CHECK(zeros(0, 0) == 1.0);
    CHECK(std::accumulate(zeros.values().begin(), zeros.values().end(), 0.0) == 1.0);

    const auto step = glcm(GrayImage(2, 1, std::vector<std::uint8_t>{0, 255}), 8, {1, 0});
    CHECK(step(0, 7) == 1.0);
    CHECK(step(7, 0) == 0.0);

    oracle::Rng rng(3);
    for (const Offset off : {Offset{1, 0}, Offset{0, 1}, Offset{-1, 2}, Offset{2, -1}}) {
        const auto img = oracle::random_gray(rng, 8, 8);
        const auto got = glcm(img, 8, off);
        CHECK(got.values() == oracle::glcm_pairs(img, 8, off.dx, off.dy));
        const double sum = std::accumulate(got.values().begin(), got.values().end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }

    try {
        glcm(GrayImage(1, 5), 8, {1, 0});
        FAIL("expected empty pairs");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_pairs);
    }
}

TEST_CASE("texture statistics")
{
    auto check = [](const TextureFeatures& t, double entropy, double contrast, double energy, double homogeneity) {
        CHECK(std::abs(t.entropy - entropy) <= 1e-12);
        CHECK(std::abs(t.contrast - contrast) <= 1e-12);
        CHECK(std::abs(t.energy - energy) <= 1e-12);
        CHECK(std::abs(t.homogeneity - homogeneity) <= 1e-12);
    };
    check(texture_features(glcm_from(8, {{5, 5, 1.0}})), 0, 0, 1, 1);
    check(texture_features(glcm_from(8, {{0, 0, .25}, {1, 1, .25}, {2, 2, .25}, {3, 3, .25}})), 2, 0, 0.25, 1);
    check(texture_features(glcm_from(8, {{0, 1, 1.0}})), 0, 1, 1, 0.5);

    oracle::Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const int levels = 2 + static_cast<int>(rng() % 15);
        const auto img = oracle::random_gray(rng, 2 + static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 10));
        const auto g = glcm(img, levels, {1, 0});
        const auto t = texture_features(g);
        const auto want = oracle::texture_of(g.values(), levels);
        check(t, want.entropy, want.contrast, want.energy, want.homogeneity);

        const double L = levels;
        CHECK(t.entropy >= 0.0);
        CHECK(t.entropy <= 2 * std::log2(L) + 1e-12);
        CHECK(t.energy >= 1.0 / (L * L) - 1e-12);
        CHECK(t.energy <= 1.0 + 1e-12);
        CHECK(t.homogeneity > 0.0);
        CHECK(t.homogeneity <= 1.0 + 1e-12);
        CHECK(t.contrast >= 0.0);
        CHECK(t.contrast <= (L - 1) * (L - 1) + 1e-12);
    }
}

TEST_CASE("sobel gradients")
{
    SUBCASE("constant image")
    {
        const auto g = sobel_gradients(GrayImage(6, 4, 201));
        CHECK(std::all_of(g.gx.begin(), g.gx.end(), [](int v) { return v == 0; }));
        CHECK(std::all_of(g.gy.begin(), g.gy.end(), [](int v) { return v == 0; }));
    }
    SUBCASE("vertical step")
    {
        GrayImage img(8, 5);
        for (int y = 0; y < 5; ++y)
            for (int x = 4; x < 8; ++x)
                img.at(x, y) = 255;
        const auto g = sobel_gradients(img);
        CHECK(std::all_of(g.gy.begin(), g.gy.end(), [](int v) { return v == 0; }));
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 8; ++x) {
                const int gx = g.gx[static_cast<std::size_t>(y) * 8 + x];
                CHECK(std::abs(gx) == (x == 3 || x == 4 ? 1020 : 0));
            }
    }
    SUBCASE("matches naive convolution")
    {
        oracle::Rng rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            const auto img = oracle::random_gray(rng, 5, 5);
            const auto g = sobel_gradients(img);
            CHECK(g.gx == oracle::correlate3(img, oracle::kernel_gx));
            CHECK(g.gy == oracle::correlate3(img, oracle::kernel_gy));
            for (std::size_t i = 0; i < g.gx.size(); ++i) {
                CHECK(std::abs(g.gx[i]) <= 1020);
                CHECK(std::abs(g.gy[i]) <= 1020);
            }
        }
    }
    SUBCASE("transposition swaps the kernels")
    {
        oracle::Rng rng(6);
        for (int trial = 0; trial < 20; ++trial) {
            const int w = 1 + static_cast<int>(rng() % 9);
            const int h = 1 + static_cast<int>(rng() % 9);
            const auto img = oracle::random_gray(rng, w, h);
            GrayImage t(h, w);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    t.at(y, x) = img.at(x, y);
            const auto gt = sobel_gradients(t);
            const auto naive_gy = oracle::correlate3(img, oracle::kernel_gy);
            // Gx is the negated transpose of Gy as printed.
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    CHECK(gt.gx[static_cast<std::size_t>(x) * h + y] == -naive_gy[static_cast<std::size_t>(y) * w + x]);
        }
    }
}

TEST_CASE("edge densities")
{
    GradientField zero{3, 2, std::vector<int>(6, 0), std::vector<int>(6, 0)};
    const auto none = edge_densities(zero, 255);
    CHECK(none.vertical == 0.0);
    CHECK(none.horizontal == 0.0);

    GradientField vertical{3, 2, std::vector<int>(6, 1020), std::vector<int>(6, 0)};
    const auto v = edge_densities(vertical, 255);
    CHECK(v.vertical == 1.0);
    CHECK(v.horizontal == 0.0);

    GradientField at_threshold{2, 1, {255, -256}, {-255, 0}};
    const auto t = edge_densities(at_threshold, 255);
    CHECK(t.vertical == 0.5);
    CHECK(t.horizontal == 0.0);

    oracle::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = sobel_gradients(oracle::random_gray(rng, 9, 7));
        const double threshold = 1.0 + static_cast<double>(rng() % 600);
        int vcount = 0, hcount = 0;
        for (std::size_t i = 0; i < g.gx.size(); ++i) {
            vcount += std::abs(g.gx[i]) > threshold;
            hcount += std::abs(g.gy[i]) > threshold;
        }
        const auto d = edge_densities(g, threshold);
        CHECK(d.vertical == vcount / 63.0);
        CHECK(d.horizontal == hcount / 63.0);
    }
    CHECK_THROWS_AS(edge_densities(zero, 0.0), Error);
}

TEST_CASE("feature vector")
{
    SUBCASE("uniform gray")
    {
        const RgbImage gray(10, 10, {128, 128, 128});
        const FeatureVector expected{128, 128, 0, 128, 128, 0, 128, 128, 0, 0, 0, 1, 1, 0, 0};
        CHECK(extract_features(gray, std::nullopt) == expected);
    }
    SUBCASE("identity shading changes nothing")
    {
        oracle::Rng rng(8);
        const auto img = oracle::random_rgb(rng, 16, 16);
        CHECK(extract_features(img, ambient_only()) == extract_features(img, std::nullopt));
    }
    SUBCASE("slots equal the component operations")
    {
        oracle::Rng rng(9);
        const ExtractionOptions opts{6, {0, 1}, 200.0};
        for (bool shaded : {false, true}) {
            const auto input = oracle::random_rgb(rng, 16, 16);
            const std::optional<PhongParams> phong = shaded ? std::optional<PhongParams>{PhongParams{}} : std::nullopt;
            const auto v = extract_features(input, phong, opts);
            const auto img = shaded ? oracle::reference_shade(input, PhongParams{}) : input;

            std::size_t slot = 0;
            for (auto pick : {+[](Rgb p) { return int(p.r); }, +[](Rgb p) { return int(p.g); },
                              +[](Rgb p) { return int(p.b); }}) {
                std::vector<int> values;
                for (const auto& px : img.pixels())
                    values.push_back(pick(px));
                const auto s = oracle::stats_of(values);
                CHECK(v[slot++] == doctest::Approx(s.mean).epsilon(1e-12));
                CHECK(v[slot++] == s.median);
                CHECK(v[slot++] == doctest::Approx(s.std_dev).epsilon(1e-12));
            }
            const auto gray = oracle::gray_of(img);
            const auto t = oracle::texture_of(oracle::glcm_pairs(gray, 6, 0, 1), 6);
            CHECK(v[slot++] == doctest::Approx(t.entropy).epsilon(1e-12));
            CHECK(v[slot++] == doctest::Approx(t.contrast).epsilon(1e-12));
            CHECK(v[slot++] == doctest::Approx(t.energy).epsilon(1e-12));
            CHECK(v[slot++] == doctest::Approx(t.homogeneity).epsilon(1e-12));
            const auto gx = oracle::correlate3(gray, oracle::kernel_gx);
            const auto gy = oracle::correlate3(gray, oracle::kernel_gy);
            CHECK(v[slot++] == std::count_if(gx.begin(), gx.end(), [](int g) { return std::abs(g) > 200; }) / 256.0);
            CHECK(v[slot++] == std::count_if(gy.begin(), gy.end(), [](int g) { return std::abs(g) > 200; }) / 256.0);
            CHECK(feature_violation(v, 6).empty());
        }
    }
    SUBCASE("deterministic")
    {
        oracle::Rng rng(10);
        const auto img = oracle::random_rgb(rng, 20, 14);
        CHECK(extract_features(img, PhongParams{}) == extract_features(img, PhongParams{}));
    }
    SUBCASE("errors propagate")
    {
        CHECK_THROWS_AS(extract_features(RgbImage(1, 4), std::nullopt), Error); // no horizontal pairs
        CHECK_THROWS_AS(extract_features(RgbImage(4, 4), std::nullopt, {1, {1, 0}, 255}), Error);
        CHECK_THROWS_AS(extract_features(RgbImage(4, 4), std::nullopt, {8, {0, 0}, 255}), Error);
    }
}

TEST_CASE("feature range checks")
{
    FeatureVector ok{128, 128, 0, 128, 128, 0, 128, 128, 0, 0, 0, 1, 1, 0, 0};
    CHECK(feature_violation(ok, 8).empty());
    auto bad = ok;
    bad[2] = 200;
    CHECK_FALSE(feature_violation(bad, 8).empty());
    bad = ok;
    bad[11] = 0;
    CHECK_FALSE(feature_violation(bad, 8).empty());
    bad = ok;
    bad[14] = std::nan("");
    CHECK_FALSE(feature_violation(bad, 8).empty());
}
