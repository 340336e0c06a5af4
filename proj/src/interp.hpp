#pragma once

#include <gsl/gsl_interp.h>

#include <algorithm>
#include <memory>
#include <span>

namespace limview::detail {

// Natural cubic spline through (x, y); linear in y. Evaluation clamps to the
// node range.
class CubicSpline {
public:
    CubicSpline(std::span<const double> x, std::span<const double> y)
        : x_(x), y_(y),
          interp_(gsl_interp_alloc(gsl_interp_cspline, x.size()), &gsl_interp_free),
          accel_(gsl_interp_accel_alloc(), &gsl_interp_accel_free) {
        gsl_interp_init(interp_.get(), x_.data(), y_.data(), x_.size());
    }

    double operator()(double x) const {
        x = std::clamp(x, x_.front(), x_.back());
        return gsl_interp_eval(interp_.get(), x_.data(), y_.data(), x, accel_.get());
    }

private:
    std::span<const double> x_;
    std::span<const double> y_;
    std::unique_ptr<gsl_interp, decltype(&gsl_interp_free)> interp_;
    std::unique_ptr<gsl_interp_accel, decltype(&gsl_interp_accel_free)> accel_;
};

}  // namespace limview::detail
