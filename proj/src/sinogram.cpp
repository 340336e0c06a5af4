#include "limview/sinogram.hpp"

#include <cmath>
#include <string>

namespace limview {

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + i * step;
    g.back() = hi;
    return g;
}

void require_uniform_from_zero(std::span<const double> grid, double tolerance) {
    if (grid.size() < 2) throw Error(ErrorKind::NonUniformGrid, "radial grid needs at least 2 samples");
    if (std::abs(grid.front()) > tolerance) throw Error(ErrorKind::NonUniformGrid, "radial grid must start at 0");
    const double step = grid.back() / static_cast<double>(grid.size() - 1);
    if (!(step > 0.0)) throw Error(ErrorKind::NonUniformGrid, "radial grid must be increasing");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (std::abs(grid[j] - step * static_cast<double>(j)) > tolerance) {
            throw Error(ErrorKind::NonUniformGrid, "radial sample " + std::to_string(j) + " is off the uniform grid");
        }
    }
}

Sinogram::Sinogram(AcquisitionCurve curve, double s_start, double s_end, int n_a, int n_r, double r_max)
    : curve_(std::move(curve)), s_start_(s_start), s_end_(s_end), n_a_(n_a), n_r_(n_r), r_max_(r_max) {
    if (n_a < 2 || n_r < 2) throw Error(ErrorKind::Validation, "sinogram needs n_a >= 2 and n_r >= 2");
    if (!(r_max > 0.0)) throw Error(ErrorKind::Validation, "r_max must be positive");
    // Validates the arc bounds.
    Arc(curve_, s_start, s_end);
    s_grid_ = uniform_grid(s_start, s_end, n_a);
    r_grid_ = uniform_grid(0.0, r_max, n_r);
    values_.assign(static_cast<std::size_t>(n_a) * n_r, 0.0);
}

}  // namespace limview
