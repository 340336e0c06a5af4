#include "limview/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace limview {

std::vector<ArtifactCircle> predicted_artifact_circles(const Phantom& phantom, const Arc& arc) {
    std::vector<ArtifactCircle> out;
    if (arc.is_full()) return out;
    for (Vec2 e : {arc.start_point(), arc.end_point()}) {
        for (std::size_t k = 0; k < phantom.discs.size(); ++k) {
            const auto& d = phantom.discs[k];
            const double dist = distance(e, d.center);
            if (dist - d.radius > 0.0) out.push_back({e, dist - d.radius, k});
            out.push_back({e, dist + d.radius, k});
        }
    }
    return out;
}

double window_at(const Arc& arc, const WindowSpec& window, double s) {
    const double off = arc.offset_of(s);
    if (arc.is_full()) return eval_window(window, std::min(off, window.b));
    if (off > arc.length()) return 0.0;
    return eval_window(window, std::min(off, window.b));
}

double sigma0(const Arc& arc, const WindowSpec& window, const Covector& cov) {
    if (classify_covector(arc, cov) == Visibility::Boundary) {
        throw Error(ErrorKind::Validation, "principal symbol is undefined on the boundary zone");
    }
    const auto hits = ray_intersections(arc.curve(), cov.x, cov.xi);
    return 0.5 * (window_at(arc, window, hits.plus.s) + window_at(arc, window, hits.minus.s));
}

EdgeProbe radial_probe(const DiscPhantom& disc, double angle, double half_width) {
    const Vec2 n = polar_unit(angle);
    return {disc.center + disc.radius * n, n, half_width};
}

namespace {

bool inside_grid(const RasterImage& image, Vec2 p) {
    return std::abs(p.x) <= image.extent && std::abs(p.y) <= image.extent;
}

}  // namespace

double measure_jump(const RasterImage& image, const EdgeProbe& probe, int samples_per_side) {
    const Vec2 n = normalized(probe.normal);
    const Vec2 inner_end = probe.location - probe.half_width * n;
    const Vec2 outer_end = probe.location + probe.half_width * n;
    if (!inside_grid(image, inner_end) || !inside_grid(image, outer_end)) {
        throw Error(ErrorKind::ProbeOutsideGrid, "edge probe leaves the image");
    }
    const int m = std::max(3, samples_per_side);
    double in_sum = 0.0, out_sum = 0.0;
    int count = 0;
    for (int k = 0; k < m; ++k) {
        // t runs from the edge outwards; keep the middle third.
        const double frac = (k + 0.5) / m;
        if (frac < 1.0 / 3.0 || frac > 2.0 / 3.0) continue;
        const double t = frac * probe.half_width;
        in_sum += image.sample(probe.location - t * n);
        out_sum += image.sample(probe.location + t * n);
        ++count;
    }
    return (in_sum - out_sum) / count;
}

namespace {

double percentile(std::vector<double>& values, double q) {
    if (values.empty()) throw Error(ErrorKind::EmptySampleSet, "every circle sample was excluded");
    std::sort(values.begin(), values.end());
    // Linear interpolation between order statistics.
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

bool near_disc_edge(const Phantom& phantom, Vec2 p, double distance_limit) {
    for (const auto& d : phantom.discs) {
        if (std::abs(distance(p, d.center) - d.radius) < distance_limit) return true;
    }
    return false;
}

}  // namespace

double artifact_amplitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom,
                          double exclusion) {
    const double step = kArtifactStencilPixels * image.pixel_size();
    std::vector<double> jumps;
    jumps.reserve(kArtifactCircleSamples);
    for (int k = 0; k < kArtifactCircleSamples; ++k) {
        const Vec2 u = polar_unit(kTwoPi * k / kArtifactCircleSamples);
        const Vec2 p = circle.center + circle.radius * u;
        auto at = [&](double offset) { return circle.center + (circle.radius + offset) * u; };
        if (!inside_grid(image, at(-3.0 * step)) || !inside_grid(image, at(3.0 * step))) continue;
        if (near_disc_edge(phantom, p, exclusion + 3.0 * step)) continue;
        const double near = image.sample(at(step)) - image.sample(at(-step));
        const double far = image.sample(at(3.0 * step)) - image.sample(at(-3.0 * step));
        jumps.push_back(std::abs(near - far / 3.0));
    }
    return percentile(jumps, kArtifactPercentile);
}

double circle_magnitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom,
                        double exclusion) {
    std::vector<double> mags;
    mags.reserve(kArtifactCircleSamples);
    for (int k = 0; k < kArtifactCircleSamples; ++k) {
        const Vec2 p = circle.center + circle.radius * polar_unit(kTwoPi * k / kArtifactCircleSamples);
        if (!inside_grid(image, p) || near_disc_edge(phantom, p, exclusion)) continue;
        mags.push_back(std::abs(image.sample(p)));
    }
    return percentile(mags, kArtifactPercentile);
}

double artifact_amplitude(const RasterImage& image, const ArtifactCircle& circle, const Phantom& phantom) {
    return artifact_amplitude(image, circle, phantom, kDefaultExclusionPixels * image.pixel_size());
}

std::vector<ProfilePoint> line_profile(const RasterImage& image, double y, int n_samples) {
    if (std::abs(y) > image.extent) throw Error(ErrorKind::Validation, "profile line outside the image");
    const int n = n_samples > 0 ? n_samples : image.n;
    std::vector<ProfilePoint> out(static_cast<std::size_t>(n));
    const double step = 2.0 * image.extent / n;
    for (int k = 0; k < n; ++k) {
        const double x = -image.extent + (k + 0.5) * step;
        out[static_cast<std::size_t>(k)] = {x, image.sample({x, y})};
    }
    return out;
}

}  // namespace limview
