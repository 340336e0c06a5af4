#pragma once

#include <memory>
#include <span>
#include <vector>

#include "limview/sinogram.hpp"

namespace limview {

/// Radial filter with symbol |lambda|^(n_dim - 1) acting in t = r^2:
///
///   P h(r) = int_R int_0^inf exp(i (s^2 - r^2) lambda) |lambda|^(n-1) h(s) ds dlambda
///          = 2 pi |D_t|^(n-1) H evaluated at t = r^2,   H(t) = h(sqrt t) / (2 sqrt t).
///
/// Rows are resampled (natural cubic spline, so P stays linear) onto a
/// uniform t-grid of n_t points on [0, r_max^2],
/// zero-padded to pad_factor * n_t and multiplied by the symbol on the
/// discrete angular frequencies lambda_m = 2 pi m / (L dt). The plan owns the
/// transform tables and is safe to share between threads once constructed.
class FilterPlan {
public:
    FilterPlan(int n_dim, int n_t, int pad_factor = 2, double taper_fraction = 0.1);

    /// Plan with n_t = 2 n_r.
    static FilterPlan for_radial_samples(int n_r, int n_dim = 2, int pad_factor = 2, double taper_fraction = 0.1);

    int n_dim() const { return n_dim_; }
    int n_t() const { return n_t_; }
    int pad_factor() const { return pad_factor_; }
    double taper_fraction() const { return taper_fraction_; }
    int transform_length() const { return n_t_ * pad_factor_; }

    /// Raised-cosine roll-off over the top taper_fraction of the half spectrum,
    /// m in [0, L/2].
    double taper(int m) const;

    /// 2 pi |lambda_m|^(n_dim - 1) taper(m) for half-spectrum index m.
    double gain(int m, double dt) const;

    /// Applies the multiplier in place to transform_length() periodic samples
    /// with spacing dt.
    void apply_symbol(std::span<double> samples, double dt) const;

private:
    struct Transform;

    int n_dim_;
    int n_t_;
    int pad_factor_;
    double taper_fraction_;
    std::shared_ptr<const Transform> transform_;
};

/// Samples of H(t) = h(sqrt t) / (2 sqrt t) on the plan's t-grid, H(0) = 0.
std::vector<double> resample_to_squared_radius(std::span<const double> row, std::span<const double> r_grid,
                                               const FilterPlan& plan);

/// Values on the plan's t-grid read back at t = r_j^2.
std::vector<double> resample_to_radius(std::span<const double> t_values, std::span<const double> r_grid);

/// Fast spectral path. Throws NonUniformGrid for an irregular r-grid.
std::vector<double> filter_row(std::span<const double> row, std::span<const double> r_grid, const FilterPlan& plan);

/// O(n_t^2) quadrature of the same double integral: trapezoid in t, trapezoid
/// on the symmetric frequency band [-pi/dt, pi/dt]. Validation only.
std::vector<double> filter_row_oracle(std::span<const double> row, std::span<const double> r_grid,
                                      const FilterPlan& plan);

Sinogram filter_sinogram(const Sinogram& sino, const FilterPlan& plan, int threads = 1);

}  // namespace limview
