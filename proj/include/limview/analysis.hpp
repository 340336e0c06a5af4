#pragma once

#include <cstddef>
#include <vector>

#include "limview/geometry.hpp"
#include "limview/phantom.hpp"
#include "limview/window.hpp"

namespace limview {

/// Circle centered at an arc endpoint and tangent to a phantom disc edge:
/// where the sharp arc cutoff places added singularities.
struct ArtifactCircle {
    Vec2 center;
    double radius = 0.0;
    std::size_t source_disc = 0;
};

/// For each endpoint e and disc (c, rho): radii |e - c| - rho and |e - c| + rho.
/// A full arc has no endpoints and yields no circles.
std::vector<ArtifactCircle> predicted_artifact_circles(const Phantom& phantom, const Arc& arc);

/// Window value at a curve parameter; zero off the arc.
double window_at(const Arc& arc, const WindowSpec& window, double s);

/// Principal symbol (chi(z+) + chi(z-)) / 2. Throws Validation for boundary
/// covectors, where the symbol is not defined.
double sigma0(const Arc& arc, const WindowSpec& window, const Covector& cov);

/// Segment across an edge: inside side is location - t normal, outside side
/// location + t normal, for t in (0, half_width].
struct EdgeProbe {
    Vec2 location;
    Vec2 normal;
    double half_width = 0.06;
};

/// Probe across the edge of `disc` at polar angle `angle` (radians).
EdgeProbe radial_probe(const DiscPhantom& disc, double angle, double half_width = 0.06);

/// Mean of the middle third of the inside samples minus mean of the middle
/// third of the outside samples. Throws ProbeOutsideGrid.
double measure_jump(const RasterImage& image, const EdgeProbe& probe, int samples_per_side = 96);

inline constexpr int kArtifactCircleSamples = 2048;
inline constexpr double kArtifactPercentile = 0.95;
inline constexpr double kDefaultExclusionPixels = 4.0;
inline constexpr double kArtifactStencilPixels = 2.0;

/// Strength of the singularity the image carries across the circle.
///
/// At 2048 points c + R u along the circle the radial profile f(rho) =
/// image(c + rho u) is probed with step d = 2 pixels:
///
///   D = [f(R + d) - f(R - d)] - [f(R + 3d) - f(R - 3d)] / 3
///
/// which vanishes for locally quadratic f and keeps 2/3 of a step. The
/// result is the 95th percentile of |D| over samples whose stencil stays on
/// the grid and whose circle point is farther than exclusion + 3d from every
/// disc edge. Throws EmptySampleSet.
double artifact_amplitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom,
                          double exclusion);

/// 95th percentile of |image| on the circle itself (no detrending), with the
/// same grid and edge exclusions. Includes any smooth background.
double circle_magnitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom,
                        double exclusion);

/// Same with the default exclusion of 4 pixels.
double artifact_amplitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom);

struct ProfilePoint {
    double x;
    double value;
};

/// Bilinear samples along the horizontal line at height y, one per pixel
/// column unless n_samples is given.
std::vector<ProfilePoint> line_profile(const RasterImage& image, double y, int n_samples = 0);

}  // namespace limview
