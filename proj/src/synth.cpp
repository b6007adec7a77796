#include "cbir/evaluation.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cbir {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// std distributions are implementation-defined; map raw engine output ourselves
// so the corpus is identical across standard libraries.
class Jitter {
public:
    Jitter(std::uint64_t seed, int category, int index)
        : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(category) << 32 |
                                                static_cast<std::uint64_t>(index))))
    {
    }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

std::uint8_t to_channel(double v)
{
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

Rgb color(double r, double g, double b)
{
    return {to_channel(r), to_channel(g), to_channel(b)};
}

// Adds low-amplitude grain so no category is perfectly flat. Draws happen in
// r, g, b order (argument evaluation order is unspecified, so never inline them).
Rgb grainy(Jitter& j, double r, double g, double b)
{
    const double gr = j.uniform(-4.0, 4.0);
    const double gg = j.uniform(-4.0, 4.0);
    const double gb = j.uniform(-4.0, 4.0);
    return color(r + gr, g + gg, b + gb);
}

RgbImage dominant_hue(Jitter& j)
{
    const double r = j.uniform(190, 215), g = j.uniform(45, 70), b = j.uniform(40, 60);
    const double fx = j.uniform(0.5, 1.5), fy = j.uniform(0.5, 1.5), phase = j.uniform(0, 2 * std::numbers::pi);
    RgbImage img(synth_size, synth_size);
    for (int y = 0; y < synth_size; ++y) {
        for (int x = 0; x < synth_size; ++x) {
            const double t = 2 * std::numbers::pi / synth_size;
            const double wave = 18.0 * std::sin(fx * t * x + phase) * std::cos(fy * t * y);
            img.at(x, y) = grainy(j, r + wave, g + 0.5 * wave, b + 0.5 * wave);
        }
    }
    return img;
}

RgbImage stripes(Jitter& j)
{
    const int period = j.integer(6, 10);
    const int offset = j.integer(0, period - 1);
    const double lo = j.uniform(20, 50), hi = j.uniform(150, 190);
    RgbImage img(synth_size, synth_size);
    for (int y = 0; y < synth_size; ++y) {
        for (int x = 0; x < synth_size; ++x) {
            const double v = ((x + offset) % period) < period / 2 ? lo : hi;
            img.at(x, y) = grainy(j, 0.35 * v, 0.55 * v, v + 40);
        }
    }
    return img;
}

RgbImage checker(Jitter& j)
{
    const int cell = j.integer(12, 16);
    const int ox = j.integer(0, cell - 1), oy = j.integer(0, cell - 1);
    const double dark = j.uniform(30, 50), light = j.uniform(170, 200);
    RgbImage img(synth_size, synth_size);
    for (int y = 0; y < synth_size; ++y) {
        for (int x = 0; x < synth_size; ++x) {
            const bool on = (((x + ox) / cell) + ((y + oy) / cell)) % 2 == 0;
            const double v = on ? light : dark;
            img.at(x, y) = grainy(j, 0.45 * v, v, 0.4 * v);
        }
    }
    return img;
}

RgbImage gradient(Jitter& j)
{
    const double angle = std::numbers::pi / 4 + j.uniform(-0.35, 0.35);
    const double dx = std::cos(angle), dy = std::sin(angle);
    const double lo = j.uniform(40, 70), hi = j.uniform(220, 245);
    const double extent = (synth_size - 1) * (std::abs(dx) + std::abs(dy));
    RgbImage img(synth_size, synth_size);
    for (int y = 0; y < synth_size; ++y) {
        for (int x = 0; x < synth_size; ++x) {
            const double t = (x * dx + y * dy) / extent;
            const double v = lo + (hi - lo) * t;
            img.at(x, y) = grainy(j, v, 0.85 * v, 0.2 * v);
        }
    }
    return img;
}

RgbImage noise(Jitter& j)
{
    const double base = j.uniform(110, 140), amplitude = j.uniform(70, 90);
    RgbImage img(synth_size, synth_size);
    for (int y = 0; y < synth_size; ++y) {
        for (int x = 0; x < synth_size; ++x) {
            const double v = base + amplitude * j.uniform(-1, 1);
            img.at(x, y) = grainy(j, v, v, v);
        }
    }
    return img;
}

}  // namespace

const std::vector<std::string>& synth_category_names()
{
    static const std::vector<std::string> names{"checker", "gradient", "hue", "noise", "stripes"};
    return names;
}

RgbImage synth_image(int category, int index, std::uint64_t seed)
{
    Jitter j(seed, category, index);
    switch (category) {
    case 0: return checker(j);
    case 1: return gradient(j);
    case 2: return dominant_hue(j);
    case 3: return noise(j);
    case 4: return stripes(j);
    }
    throw Error(ErrorCode::invalid_argument, "synthetic category must be in [0, 4], got " + std::to_string(category));
}

void generate_synthetic_corpus(const std::filesystem::path& out_dir, std::uint64_t seed)
{
    const auto& names = synth_category_names();
    for (int c = 0; c < synth_categories; ++c) {
        const auto dir = out_dir / names[static_cast<std::size_t>(c)];
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
        for (int i = 0; i < synth_per_category; ++i) {
            const std::string name = (i < 10 ? "0" : "") + std::to_string(i) + ".ppm";
            write_ppm(dir / name, synth_image(c, i, seed));
        }
    }
}

}  // namespace cbir
