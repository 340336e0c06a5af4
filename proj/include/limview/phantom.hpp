#pragma once

#include <cstddef>
#include <vector>

#include "limview/core.hpp"
#include "limview/geometry.hpp"
#include "limview/sinogram.hpp"

namespace limview {

struct DiscPhantom {
    Vec2 center;
    double radius = 0.0;
    double amplitude = 1.0;
};

/// Sum of weighted indicator discs.
struct Phantom {
    std::vector<DiscPhantom> discs;

    /// Nonempty, positive radii, finite values.
    void validate() const;
    /// validate() plus: every closed disc strictly inside the curve.
    void validate(const AcquisitionCurve& curve) const;
};

/// n x n samples on [-extent, extent]^2, row-major. Pixel (row i, col j) has
/// its center at x = -extent + (j + 1/2) h, y = extent - (i + 1/2) h with
/// h = 2 extent / n, so row 0 is the top of the rendered image.
struct RasterImage {
    int n = 0;
    double extent = 1.0;
    std::vector<double> values;

    RasterImage() = default;
    RasterImage(int n_pixels, double half_width);

    double pixel_size() const { return 2.0 * extent / n; }
    double x_of(int col) const { return -extent + (col + 0.5) * pixel_size(); }
    double y_of(int row) const { return extent - (row + 0.5) * pixel_size(); }
    Vec2 center(int row, int col) const { return {x_of(col), y_of(row)}; }

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * n + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * n + col]; }

    /// Bilinear interpolation between pixel centers, clamped at the border.
    double sample(Vec2 p) const;
};

RasterImage rasterize(const Phantom& phantom, int n, double extent = 1.0);

/// Unnormalized arc-length integral of the phantom over the circle |y - z| = r.
double circular_mean(const Phantom& phantom, Vec2 z, double r);

double circular_mean(const DiscPhantom& disc, Vec2 z, double r);

/// Analytic data on a uniform (s, r) grid: n_a parameters over the closed arc
/// and n_r radii over [0, r_max].
Sinogram sample_sinogram(const Phantom& phantom, const Arc& arc, int n_a, int n_r, double r_max, int threads = 1);

}  // namespace limview
