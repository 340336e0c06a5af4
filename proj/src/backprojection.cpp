#include "limview/backprojection.hpp"

#include <cmath>
#include <string>

namespace limview {

void ReconGrid::validate(const AcquisitionCurve& curve) const {
    if (n < 2) throw Error(ErrorKind::Validation, "reconstruction grid needs n >= 2");
    if (!(extent > 0.0)) throw Error(ErrorKind::Validation, "reconstruction extent must be positive");
    const double c = extent - extent / n;
    for (Vec2 corner : {Vec2{c, c}, Vec2{-c, c}, Vec2{-c, -c}, Vec2{c, -c}}) {
        if (!curve.strictly_inside(corner)) {
            throw Error(ErrorKind::GridOutsideDomain,
                        "pixel centers reach outside the acquisition curve (extent " + std::to_string(extent) + ")");
        }
    }
}

RasterImage backproject(const Sinogram& filtered, std::span<const double> weights, const ReconGrid& grid, int threads) {
    if (weights.size() != static_cast<std::size_t>(filtered.n_a())) {
        throw Error(ErrorKind::Validation, "window weights must match the number of angular samples");
    }
    const auto& curve = filtered.curve();
    grid.validate(curve);

    // Per-transducer geometry and the combined quadrature weight.
    const int n_a = filtered.n_a();
    struct Transducer {
        Vec2 z;
        Vec2 normal;
        double weight;
    };
    std::vector<Transducer> tr;
    tr.reserve(static_cast<std::size_t>(n_a));
    const double ds = filtered.ds();
    const double prefactor = 1.0 / (2.0 * kPi * kPi);
    for (int i = 0; i < n_a; ++i) {
        const double s = filtered.s_grid()[static_cast<std::size_t>(i)];
        const Frame f = curve_frame(curve, s);
        const double trap = (i == 0 || i == n_a - 1) ? 0.5 : 1.0;
        const double w = prefactor * trap * ds * f.speed * weights[static_cast<std::size_t>(i)];
        tr.push_back({curve.point(s), f.outward_normal, w});
    }

    RasterImage img(grid.n, grid.extent);
    const int n_r = filtered.n_r();
    const double inv_dr = 1.0 / filtered.dr();
    parallel_for(static_cast<std::size_t>(grid.n), threads, [&](std::size_t row) {
        const int r = static_cast<int>(row);
        for (int c = 0; c < grid.n; ++c) {
            const Vec2 x = img.center(r, c);
            double acc = 0.0;
            for (int i = 0; i < n_a; ++i) {
                const auto& t = tr[static_cast<std::size_t>(i)];
                if (t.weight == 0.0) continue;
                const Vec2 d = t.z - x;
                const double pos = norm(d) * inv_dr;
                const int j = static_cast<int>(pos);
                if (j >= n_r - 1) continue;
                const double u = pos - j;
                const auto g = filtered.row(i);
                const double value = (1.0 - u) * g[static_cast<std::size_t>(j)] + u * g[static_cast<std::size_t>(j) + 1];
                acc += t.weight * dot(d, t.normal) * value;
            }
            img.at(r, c) = acc;
        }
    });
    return img;
}

RasterImage reconstruct(const Sinogram& data, const WindowSpec& window, const FilterPlan& plan, const ReconGrid& grid,
                        int threads) {
    window.validate();
    grid.validate(data.curve());
    const Sinogram filtered = filter_sinogram(data, plan, threads);
    const auto weights = sample_window(window, data.s_grid(), data.s_start());
    return backproject(filtered, weights, grid, threads);
}

RasterImage reconstruct(const Phantom& phantom, const Arc& arc, const SamplingSpec& sampling,
                        const WindowSpec& window, const FilterPlan& plan, const ReconGrid& grid, int threads) {
    phantom.validate(arc.curve());
    const Sinogram data = sample_sinogram(phantom, arc, sampling.n_a, sampling.n_r, sampling.r_max, threads);
    return reconstruct(data, window, plan, grid, threads);
}

}  // namespace limview
