#pragma once

#include <span>
#include <vector>

#include "limview/filter.hpp"
#include "limview/phantom.hpp"
#include "limview/window.hpp"

namespace limview {

/// Output pixel grid; same pixel-center convention as RasterImage.
struct ReconGrid {
    int n = 256;
    double extent = 0.7;

    /// n >= 2 and every pixel center strictly inside the curve (checked on
    /// the corner pixels, which suffices for a convex curve).
    void validate(const AcquisitionCurve& curve) const;
};

/// (B_chi g)(x) = 1/(2 pi^2) sum_i tw_i <z_i - x, nu_i> chi_i g(z_i, |x - z_i|) |z'(s_i)| ds
/// with trapezoid weights tw_i over the arc samples and linear interpolation
/// in r (zero beyond r_max). Throws GridOutsideDomain.
RasterImage backproject(const Sinogram& filtered, std::span<const double> weights, const ReconGrid& grid,
                        int threads = 1);

/// T f = B chi P g for measured data g.
RasterImage reconstruct(const Sinogram& data, const WindowSpec& window, const FilterPlan& plan, const ReconGrid& grid,
                        int threads = 1);

struct SamplingSpec {
    int n_a = 512;
    int n_r = 512;
    double r_max = 2.0;
};

/// T f = B chi P R f with analytic forward data.
RasterImage reconstruct(const Phantom& phantom, const Arc& arc, const SamplingSpec& sampling,
                        const WindowSpec& window, const FilterPlan& plan, const ReconGrid& grid, int threads = 1);

}  // namespace limview
