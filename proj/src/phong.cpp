#include "cbir/phong.hpp"

#include "cbir/error.hpp"

#include <algorithm>
#include <string>

namespace cbir {

Vec3 normalize(Vec3 v)
{
    const double len = length(v);
    return {v.x / len, v.y / len, v.z / len};
}

namespace {

constexpr double unit_tolerance = 1e-9;

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorCode::invalid_argument, "phong parameters: " + what);
}

}  // namespace

void PhongParams::validate() const
{
    require(ka >= 0.0 && std::isfinite(ka), "ka must be >= 0");
    require(kd >= 0.0 && std::isfinite(kd), "kd must be >= 0");
    require(ks >= 0.0 && std::isfinite(ks), "ks must be >= 0");
    require(ia >= 0.0 && std::isfinite(ia), "ia must be >= 0");
    require(il >= 0.0 && std::isfinite(il), "il must be >= 0");
    require(ns >= 1.0 && std::isfinite(ns), "ns must be >= 1");
    require(height_scale > 0.0 && std::isfinite(height_scale), "height_scale must be > 0");
    require(std::abs(length(light_dir) - 1.0) <= unit_tolerance, "light_dir must be a unit vector");
    require(std::abs(length(view_dir) - 1.0) <= unit_tolerance, "view_dir must be a unit vector");
    require(length(light_dir + view_dir) > unit_tolerance, "light_dir and view_dir must not be opposite");
}

Vec3 PhongParams::halfway() const
{
    return normalize(light_dir + view_dir);
}

PhongParams ambient_only()
{
    PhongParams p;
    p.ka = 1.0;
    p.ia = 1.0;
    p.kd = 0.0;
    p.ks = 0.0;
    return p;
}

NormalField::NormalField(int width, int height, std::vector<Vec3> normals)
    : width_(width), height_(height), normals_(std::move(normals))
{
    if (width < 1 || height < 1 || normals_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error(ErrorCode::invalid_argument, "normal field size does not match its dimensions");
}

namespace {

Vec3 normal_at(const GrayImage& gray, int x, int y, double height_scale)
{
    const double k = height_scale / 255.0;
    const double dhdx = k * (static_cast<double>(gray.clamped(x + 1, y)) - gray.clamped(x - 1, y)) / 2.0;
    const double dhdy = k * (static_cast<double>(gray.clamped(x, y + 1)) - gray.clamped(x, y - 1)) / 2.0;
    return normalize({-dhdx, -dhdy, 1.0});
}

std::uint8_t shade_channel(std::uint8_t c, double n_dot_l, double n_dot_h, const PhongParams& p)
{
    const double albedo = static_cast<double>(c);
    const double v = p.ia * p.ka * albedo + p.il * p.kd * std::max(n_dot_l, 0.0) * albedo +
                     255.0 * p.il * p.ks * std::pow(std::max(n_dot_h, 0.0), p.ns);
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

Rgb shade_pixel(Rgb px, double n_dot_l, double n_dot_h, const PhongParams& p)
{
    return {shade_channel(px.r, n_dot_l, n_dot_h, p), shade_channel(px.g, n_dot_l, n_dot_h, p),
            shade_channel(px.b, n_dot_l, n_dot_h, p)};
}

}  // namespace

NormalField height_field_normals(const GrayImage& gray, double height_scale)
{
    if (!(height_scale > 0.0))
        throw Error(ErrorCode::invalid_argument, "height_scale must be > 0");
    std::vector<Vec3> normals;
    normals.reserve(gray.size());
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            normals.push_back(normal_at(gray, x, y, height_scale));
    return NormalField(gray.width(), gray.height(), std::move(normals));
}

double phong_intensity(double n_dot_l, double n_dot_h, const PhongParams& p)
{
    return p.ka * p.ia + p.kd * p.il * std::max(n_dot_l, 0.0) + p.ks * p.il * std::pow(std::max(n_dot_h, 0.0), p.ns);
}

RgbImage shade_image(const RgbImage& img, const PhongParams& p)
{
    p.validate();
    const auto normals = height_field_normals(to_grayscale(img), p.height_scale);
    const Vec3 h = p.halfway();
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Vec3 n = normals.at(x, y);
            out.at(x, y) = shade_pixel(img.at(x, y), dot(n, p.light_dir), dot(n, h), p);
        }
    }
    return out;
}

double tile_ndoth(const TileInterpolant& t, double x, double y)
{
    const Vec3 n = x * t.a + y * t.b + t.c;
    const Vec3 h = x * t.d + y * t.e + t.f;
    const double n_len = length(n);
    const double h_len = length(h);
    if (!(n_len > 0.0) || !(h_len > 0.0))
        throw Error(ErrorCode::degenerate_interpolant, "interpolated vector has zero length at (" + std::to_string(x) +
                                                           ", " + std::to_string(y) + ")");
    return std::clamp(dot(n, h) / (n_len * h_len), -1.0, 1.0);
}

namespace {

// Lattice coordinates along one axis: 0, tile, 2*tile, ... and the last pixel.
std::vector<int> lattice(int extent, int tile)
{
    std::vector<int> points;
    for (int v = 0; v < extent; v += tile)
        points.push_back(v);
    if (points.back() != extent - 1)
        points.push_back(extent - 1);
    return points;
}

}  // namespace

RgbImage shade_image_tiled(const RgbImage& img, const PhongParams& p, int tile)
{
    if (tile < 2)
        throw Error(ErrorCode::invalid_argument, "tile size must be >= 2, got " + std::to_string(tile));
    p.validate();

    const auto gray = to_grayscale(img);
    const auto xs = lattice(img.width(), tile);
    const auto ys = lattice(img.height(), tile);
    const auto cols = static_cast<int>(xs.size());
    const auto rows = static_cast<int>(ys.size());

    std::vector<Vec3> corner(static_cast<std::size_t>(cols) * rows);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < cols; ++i)
            corner[static_cast<std::size_t>(j) * cols + i] = normal_at(gray, xs[i], ys[j], p.height_scale);
    auto corner_at = [&](int i, int j) { return corner[static_cast<std::size_t>(j) * cols + i]; };

    const Vec3 zero{};
    const Vec3 h = p.halfway();
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        const int cj = std::min(y / tile, std::max(rows - 2, 0));
        const int j1 = std::min(cj + 1, rows - 1);
        const int y0 = ys[cj];
        const int span_y = ys[j1] - y0;
        for (int x = 0; x < img.width(); ++x) {
            const int ci = std::min(x / tile, std::max(cols - 2, 0));
            const int i1 = std::min(ci + 1, cols - 1);
            const int x0 = xs[ci];
            const int span_x = xs[i1] - x0;
            const int lx = x - x0;
            const int ly = y - y0;

            const Vec3 n00 = corner_at(ci, cj);
            const Vec3 n10 = corner_at(i1, cj);
            const Vec3 n01 = corner_at(ci, j1);
            const Vec3 n11 = corner_at(i1, j1);
            const double inv_x = span_x > 0 ? 1.0 / span_x : 0.0;
            const double inv_y = span_y > 0 ? 1.0 / span_y : 0.0;

            // Split along the (x0,y0)-(x1,y1) diagonal; u >= v is the lower triangle.
            TileInterpolant t{};
            if (static_cast<long>(lx) * span_y >= static_cast<long>(ly) * span_x) {
                t.a = inv_x * (n10 - n00);
                t.b = inv_y * (n11 - n10);
            } else {
                t.a = inv_x * (n11 - n01);
                t.b = inv_y * (n01 - n00);
            }
            t.c = n00;
            t.d = zero;
            t.e = zero;
            t.f = h;
            const double n_dot_h = tile_ndoth(t, lx, ly);
            t.f = p.light_dir;
            const double n_dot_l = tile_ndoth(t, lx, ly);
            out.at(x, y) = shade_pixel(img.at(x, y), n_dot_l, n_dot_h, p);
        }
    }
    return out;
}

}  // namespace cbir
