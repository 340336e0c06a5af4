#include "limview/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace limview {

void Phantom::validate() const {
    if (discs.empty()) throw Error(ErrorKind::Validation, "phantom has no discs");
    for (const auto& d : discs) {
        if (!(d.radius > 0.0) || !std::isfinite(d.radius)) {
            throw Error(ErrorKind::Validation, "disc radius must be positive and finite");
        }
        if (!std::isfinite(d.amplitude) || !std::isfinite(d.center.x) || !std::isfinite(d.center.y)) {
            throw Error(ErrorKind::Validation, "disc parameters must be finite");
        }
    }
}

void Phantom::validate(const AcquisitionCurve& curve) const {
    validate();
    // Sample the disc boundary densely; the disc is convex so its boundary
    // being strictly inside a convex curve implies the whole disc is.
    for (const auto& d : discs) {
        if (!curve.strictly_inside(d.center)) {
            throw Error(ErrorKind::Validation, "disc center lies outside the acquisition curve");
        }
        for (int k = 0; k < 1024; ++k) {
            const Vec2 p = d.center + d.radius * polar_unit(kTwoPi * k / 1024.0);
            if (!curve.strictly_inside(p)) {
                throw Error(ErrorKind::Validation, "disc touches or crosses the acquisition curve");
            }
        }
    }
}

RasterImage::RasterImage(int n_pixels, double half_width) : n(n_pixels), extent(half_width) {
    if (n_pixels < 2) throw Error(ErrorKind::Validation, "image needs n >= 2");
    if (!(half_width > 0.0)) throw Error(ErrorKind::Validation, "image extent must be positive");
    values.assign(static_cast<std::size_t>(n_pixels) * n_pixels, 0.0);
}

double RasterImage::sample(Vec2 p) const {
    const double h = pixel_size();
    const double fx = std::clamp((p.x + extent) / h - 0.5, 0.0, static_cast<double>(n - 1));
    const double fy = std::clamp((extent - p.y) / h - 0.5, 0.0, static_cast<double>(n - 1));
    const int c0 = std::min(static_cast<int>(fx), n - 2);
    const int r0 = std::min(static_cast<int>(fy), n - 2);
    const double u = fx - c0, v = fy - r0;
    return (1 - u) * (1 - v) * at(r0, c0) + u * (1 - v) * at(r0, c0 + 1) + (1 - u) * v * at(r0 + 1, c0) +
           u * v * at(r0 + 1, c0 + 1);
}

RasterImage rasterize(const Phantom& phantom, int n, double extent) {
    RasterImage img(n, extent);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec2 p = img.center(i, j);
            double v = 0.0;
            for (const auto& d : phantom.discs) {
                if (distance(p, d.center) <= d.radius) v += d.amplitude;
            }
            img.at(i, j) = v;
        }
    }
    return img;
}

double circular_mean(const DiscPhantom& disc, Vec2 z, double r) {
    const double d = distance(z, disc.center);
    const double rho = disc.radius;
    if (r <= 0.0) return 0.0;
    if (r <= rho - d) return disc.amplitude * kTwoPi * r;
    if (r >= d + rho) return 0.0;
    if (d > rho && r <= d - rho) return 0.0;
    const double c = std::clamp((d * d + r * r - rho * rho) / (2.0 * d * r), -1.0, 1.0);
    return disc.amplitude * 2.0 * r * std::acos(c);
}

double circular_mean(const Phantom& phantom, Vec2 z, double r) {
    double sum = 0.0;
    for (const auto& d : phantom.discs) sum += circular_mean(d, z, r);
    return sum;
}

Sinogram sample_sinogram(const Phantom& phantom, const Arc& arc, int n_a, int n_r, double r_max, int threads) {
    Sinogram sino(arc.curve(), arc.s_start(), arc.s_end(), n_a, n_r, r_max);
    const auto& s_grid = sino.s_grid();
    const auto& r_grid = sino.r_grid();
    parallel_for(static_cast<std::size_t>(n_a), threads, [&](std::size_t i) {
        const Vec2 z = arc.curve().point(s_grid[i]);
        auto row = sino.row(static_cast<int>(i));
        for (int j = 0; j < n_r; ++j) row[static_cast<std::size_t>(j)] = circular_mean(phantom, z, r_grid[static_cast<std::size_t>(j)]);
    });
    return sino;
}

}  // namespace limview
