#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "limview/core.hpp"

namespace limview {

enum class CurveKind { UnitCircle, Ellipse, Polar, TabulatedConvex };

struct CurveSample {
    double s;
    Vec2 point;
};

struct TabulatedData;

/// Closed convex acquisition curve z(s), traversed counter-clockwise or
/// clockwise over one period. Immutable; copies share tabulated storage.
///
/// The Polar kind is the shifted limacon
///   x = ((2 + cos s) cos s - 1) / 2,  y = (2 + cos s) sin s / 2.
/// Only UnitCircle is arc-length parametrized; quadratures carry the speed
/// |z'(s)| explicitly.
class AcquisitionCurve {
public:
    static AcquisitionCurve unit_circle();
    static AcquisitionCurve ellipse(double a_axis, double b_axis);
    static AcquisitionCurve polar();
    /// Samples must have strictly increasing s. A repeated closing sample is
    /// dropped; otherwise the period is extended by the mean spacing.
    static AcquisitionCurve tabulated(std::vector<CurveSample> samples, std::string source = "tabulated");
    static AcquisitionCurve load_csv(const std::string& path);

    /// "circle", "ellipse:a,b", "polar", or a path to an (s, x, y) CSV file.
    static AcquisitionCurve parse(std::string_view spec);

    CurveKind kind() const { return kind_; }
    /// Round-trips through parse().
    const std::string& spec() const { return spec_; }
    double period() const { return period_; }
    double start_parameter() const { return s0_; }

    Vec2 point(double s) const;
    Vec2 derivative(double s) const;

    /// Positive strictly inside, zero on the curve, negative outside.
    double containment(Vec2 p) const;
    bool strictly_inside(Vec2 p) const { return containment(p) > 0.0; }

    /// Curve parameter (in [start, start + period)) of a point on the curve.
    double parameter_of(Vec2 p) const;

    /// Counter-clockwise traversal when true.
    bool counter_clockwise() const { return ccw_; }

    /// Sign test on consecutive tangent increments of a uniform sample.
    bool is_convex(int samples = 4096) const;

    /// Largest |z(s)| over a dense sample.
    double bounding_radius() const;

    /// Largest distance between two curve points (dense sample; exact for
    /// the unit circle).
    double diameter() const;

private:
    AcquisitionCurve(CurveKind kind, double a, double b, std::string spec);

    double wrap(double s) const;

    CurveKind kind_;
    double a_ = 1.0;
    double b_ = 1.0;
    double period_ = kTwoPi;
    double s0_ = 0.0;
    bool ccw_ = true;
    std::string spec_;
    std::shared_ptr<const TabulatedData> table_;
};

struct Frame {
    Vec2 tangent;
    Vec2 outward_normal;
    double speed;
};

Vec2 curve_point(const AcquisitionCurve& curve, double s);

/// Throws DegenerateTangent when |z'(s)| < 1e-10.
Frame curve_frame(const AcquisitionCurve& curve, double s);

/// Sub-arc Gamma = z([s_start, s_end]) of the curve.
class Arc {
public:
    Arc(AcquisitionCurve curve, double s_start, double s_end);

    static Arc full(AcquisitionCurve curve);

    const AcquisitionCurve& curve() const { return curve_; }
    double s_start() const { return s_start_; }
    double s_end() const { return s_end_; }
    double length() const { return s_end_ - s_start_; }
    bool is_full() const;

    Vec2 start_point() const { return curve_.point(s_start_); }
    Vec2 end_point() const { return curve_.point(s_end_); }

    /// Offset of parameter s from s_start, reduced to [0, period).
    double offset_of(double s) const;

private:
    AcquisitionCurve curve_;
    double s_start_;
    double s_end_;
};

struct Covector {
    Vec2 x;
    Vec2 xi;
};

struct RayHit {
    Vec2 point;
    double s;  ///< curve parameter of the hit
    double t;  ///< hit = x + t * xi
};

struct RayIntersections {
    RayHit plus;
    RayHit minus;
};

/// Intersections of S with the rays {x + t xi : t >= 0} and {t <= 0}, found by
/// bisection on the containment function to 1e-10 in t. Throws NotInside.
RayIntersections ray_intersections(const AcquisitionCurve& curve, Vec2 x, Vec2 xi);

enum class Visibility { DoublyVisible, SinglyVisible, Invisible, Boundary };

const char* to_string(Visibility v);

inline constexpr double kBoundaryParameterTolerance = 1e-9;

Visibility classify_covector(const Arc& arc, const Covector& cov);

}  // namespace limview
