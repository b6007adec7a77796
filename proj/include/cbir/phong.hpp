#pragma once

#include "cbir/image.hpp"

#include <cmath>
#include <vector>

namespace cbir {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double length(Vec3 v) { return std::sqrt(dot(v, v)); }
Vec3 normalize(Vec3 v);

// Illumination coefficients for I = ka*ia + kd*il*(N.L) + ks*il*(N.H)^ns.
struct PhongParams {
    double ka = 0.2;
    double kd = 0.6;
    double ks = 0.3;
    double ia = 1.0;
    double il = 1.0;
    double ns = 10.0;
    Vec3 light_dir = normalize({1.0, 1.0, 1.0});
    Vec3 view_dir = {0.0, 0.0, 1.0};
    double height_scale = 10.0;

    /// Throws Error{invalid_argument} if any coefficient is out of range,
    /// a direction is not unit length, or L == -V.
    void validate() const;
    Vec3 halfway() const;

    friend bool operator==(const PhongParams&, const PhongParams&) = default;
};

// Reflectance-only identity: output equals input.
PhongParams ambient_only();

class NormalField {
public:
    NormalField(int width, int height, std::vector<Vec3> normals);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    Vec3 at(int x, int y) const { return normals_[static_cast<std::size_t>(y) * width_ + x]; }
    const std::vector<Vec3>& normals() const noexcept { return normals_; }

private:
    int width_;
    int height_;
    std::vector<Vec3> normals_;
};

/// Intensity read as height h = height_scale * gray / 255; gradients by
/// central differences with edge replication; N = normalize(-dh/dx, -dh/dy, 1).
NormalField height_field_normals(const GrayImage& gray, double height_scale);

/// Evaluates the illumination model with negative dot products clamped to 0.
double phong_intensity(double n_dot_l, double n_dot_h, const PhongParams& p);

/// Per-pixel Phong shading: ambient and diffuse modulate the pixel colour,
/// the specular term adds a white highlight.
RgbImage shade_image(const RgbImage& img, const PhongParams& p);

/// Linear interpolants over one tile (x, y are tile-local pixel offsets):
///   N(x, y) = a*x + b*y + c,   H(x, y) = d*x + e*y + f
struct TileInterpolant {
    Vec3 a, b, c;
    Vec3 d, e, f;
};

/// Cosine between the interpolated N and H at (x, y).
/// Throws Error{degenerate_interpolant} when either has zero length.
double tile_ndoth(const TileInterpolant& t, double x, double y);

/// Phong shading with normals evaluated only on a lattice of tile corners
/// (spacing `tile`, plus the last row/column). Each tile is split along its
/// diagonal into two triangles over which N is linear in (x, y). Requires tile >= 2.
RgbImage shade_image_tiled(const RgbImage& img, const PhongParams& p, int tile);

}  // namespace cbir
