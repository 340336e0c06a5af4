#pragma once

#include <span>
#include <vector>

#include "limview/geometry.hpp"

namespace limview {

/// Data g(s_i, r_j) sampled on a uniform parameter grid over an arc and a
/// uniform radial grid starting at r = 0. Values are row-major, one row per
/// transducer position.
class Sinogram {
public:
    Sinogram(AcquisitionCurve curve, double s_start, double s_end, int n_a, int n_r, double r_max);

    const AcquisitionCurve& curve() const { return curve_; }
    Arc arc() const { return Arc(curve_, s_start_, s_end_); }
    double s_start() const { return s_start_; }
    double s_end() const { return s_end_; }
    double r_max() const { return r_max_; }
    int n_a() const { return n_a_; }
    int n_r() const { return n_r_; }

    const std::vector<double>& s_grid() const { return s_grid_; }
    const std::vector<double>& r_grid() const { return r_grid_; }
    double ds() const { return (s_end_ - s_start_) / (n_a_ - 1); }
    double dr() const { return r_max_ / (n_r_ - 1); }

    std::span<double> row(int i) { return {values_.data() + static_cast<std::size_t>(i) * n_r_, static_cast<std::size_t>(n_r_)}; }
    std::span<const double> row(int i) const {
        return {values_.data() + static_cast<std::size_t>(i) * n_r_, static_cast<std::size_t>(n_r_)};
    }
    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * n_r_ + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * n_r_ + j]; }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

private:
    AcquisitionCurve curve_;
    double s_start_;
    double s_end_;
    int n_a_;
    int n_r_;
    double r_max_;
    std::vector<double> s_grid_;
    std::vector<double> r_grid_;
    std::vector<double> values_;
};

/// Uniform grid of n points on [lo, hi] with exact endpoints.
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Throws NonUniformGrid unless the grid starts at 0 and every spacing matches
/// the mean spacing within `tolerance` (relative to the spacing).
void require_uniform_from_zero(std::span<const double> grid, double tolerance = 1e-9);

}  // namespace limview
