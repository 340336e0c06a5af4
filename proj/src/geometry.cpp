#include "limview/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace limview {

struct TabulatedData {
    std::vector<double> s;    // node parameters, strictly increasing
    std::vector<Vec2> p;      // node points
    std::vector<Vec2> m;      // node tangents dz/ds (centered differences)
    std::vector<double> ds;   // dense polyline parameters
    std::vector<Vec2> dense;  // dense polyline points (closed implicitly)
};

namespace {

constexpr Vec2 kPolarPole{-0.5, 0.0};

double polar_radius(double theta) { return 0.5 * (2.0 + std::cos(theta)); }

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// Segment index and local coordinate for a wrapped parameter.
std::pair<std::size_t, double> locate(const TabulatedData& t, double s, double period) {
    const std::size_t n = t.s.size();
    auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
    std::size_t i = it == t.s.begin() ? 0 : static_cast<std::size_t>(it - t.s.begin()) - 1;
    const double s_next = (i + 1 < n) ? t.s[i + 1] : t.s[0] + period;
    const double h = s_next - t.s[i];
    return {i, h};
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double u = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    return distance(p, a + u * ab);
}

double parse_double(std::string_view text, const std::string& context) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorKind::Validation, "cannot parse number '" + std::string(text) + "' in " + context);
    }
    return value;
}

}  // namespace

AcquisitionCurve::AcquisitionCurve(CurveKind kind, double a, double b, std::string spec)
    : kind_(kind), a_(a), b_(b), spec_(std::move(spec)) {}

AcquisitionCurve AcquisitionCurve::unit_circle() { return {CurveKind::UnitCircle, 1.0, 1.0, "circle"}; }

AcquisitionCurve AcquisitionCurve::ellipse(double a_axis, double b_axis) {
    if (!(a_axis > 0.0) || !(b_axis > 0.0)) {
        throw Error(ErrorKind::Validation, "ellipse axes must be positive");
    }
    std::ostringstream spec;
    spec.precision(17);
    spec << "ellipse:" << a_axis << ',' << b_axis;
    return {CurveKind::Ellipse, a_axis, b_axis, spec.str()};
}

AcquisitionCurve AcquisitionCurve::polar() { return {CurveKind::Polar, 1.0, 1.0, "polar"}; }

AcquisitionCurve AcquisitionCurve::tabulated(std::vector<CurveSample> samples, std::string source) {
    if (samples.size() < 4) {
        throw Error(ErrorKind::Validation, "tabulated curve needs at least 4 samples");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].s > samples[i - 1].s)) {
            throw Error(ErrorKind::Validation, "tabulated curve parameters must be strictly increasing");
        }
    }
    const double span = samples.back().s - samples.front().s;
    double period = 0.0;
    if (distance(samples.back().point, samples.front().point) <= 1e-12) {
        period = span;
        samples.pop_back();
    } else {
        period = span + span / static_cast<double>(samples.size() - 1);
    }

    auto data = std::make_shared<TabulatedData>();
    const std::size_t n = samples.size();
    for (const auto& smp : samples) {
        data->s.push_back(smp.s);
        data->p.push_back(smp.point);
    }
    data->m.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1) % n;
        const std::size_t im = (i + n - 1) % n;
        double s_plus = data->s[ip] + (ip == 0 ? period : 0.0);
        double s_minus = data->s[im] - (i == 0 ? period : 0.0);
        data->m[i] = (data->p[ip] - data->p[im]) / (s_plus - s_minus);
    }

    AcquisitionCurve curve(CurveKind::TabulatedConvex, 1.0, 1.0, std::move(source));
    curve.period_ = period;
    curve.s0_ = data->s.front();
    curve.table_ = data;

    const std::size_t dense_n = std::max<std::size_t>(4096, 8 * n);
    data->ds.resize(dense_n);
    data->dense.resize(dense_n);
    for (std::size_t k = 0; k < dense_n; ++k) {
        const double s = curve.s0_ + period * static_cast<double>(k) / static_cast<double>(dense_n);
        data->ds[k] = s;
        data->dense[k] = curve.point(s);
    }
    double area2 = 0.0;
    for (std::size_t k = 0; k < dense_n; ++k) {
        area2 += cross(data->dense[k], data->dense[(k + 1) % dense_n]);
    }
    if (std::abs(area2) < 1e-14) {
        throw Error(ErrorKind::Validation, "tabulated curve encloses no area");
    }
    curve.ccw_ = area2 > 0.0;
    if (!curve.is_convex()) {
        throw Error(ErrorKind::Validation, "tabulated curve is not convex");
    }
    return curve;
}

AcquisitionCurve AcquisitionCurve::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open curve file " + path);
    std::vector<CurveSample> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string_view> cols;
        std::string_view rest(line);
        while (true) {
            auto comma = rest.find(',');
            cols.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cols.size() != 3) throw Error(ErrorKind::Format, "curve CSV rows must be s,x,y in " + path);
        // Tolerate a header row.
        if (samples.empty() && cols[0].find_first_of("0123456789") == std::string_view::npos) continue;
        samples.push_back({parse_double(cols[0], path), {parse_double(cols[1], path), parse_double(cols[2], path)}});
    }
    return tabulated(std::move(samples), path);
}

AcquisitionCurve AcquisitionCurve::parse(std::string_view spec) {
    if (spec == "circle") return unit_circle();
    if (spec == "polar") return polar();
    if (spec.starts_with("ellipse:")) {
        std::string_view args = spec.substr(8);
        auto comma = args.find(',');
        if (comma == std::string_view::npos) {
            throw Error(ErrorKind::Validation, "ellipse curve must be given as ellipse:a,b");
        }
        return ellipse(parse_double(args.substr(0, comma), "ellipse axes"),
                       parse_double(args.substr(comma + 1), "ellipse axes"));
    }
    return load_csv(std::string(spec));
}

double AcquisitionCurve::wrap(double s) const {
    double w = std::fmod(s - s0_, period_);
    if (w < 0.0) w += period_;
    return s0_ + w;
}

Vec2 AcquisitionCurve::point(double s) const {
    switch (kind_) {
    case CurveKind::UnitCircle: return {std::cos(s), std::sin(s)};
    case CurveKind::Ellipse: return {a_ * std::cos(s), b_ * std::sin(s)};
    case CurveKind::Polar: {
        const double c = std::cos(s);
        return {0.5 * ((2.0 + c) * c - 1.0), 0.5 * (2.0 + c) * std::sin(s)};
    }
    case CurveKind::TabulatedConvex: {
        const auto& t = *table_;
        const double sw = wrap(s);
        auto [i, h] = locate(t, sw, period_);
        const std::size_t j = (i + 1) % t.s.size();
        const double u = (sw - t.s[i]) / h;
        const double u2 = u * u, u3 = u2 * u;
        const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
        const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
        return h00 * t.p[i] + (h10 * h) * t.m[i] + h01 * t.p[j] + (h11 * h) * t.m[j];
    }
    }
    return {};
}

Vec2 AcquisitionCurve::derivative(double s) const {
    switch (kind_) {
    case CurveKind::UnitCircle: return {-std::sin(s), std::cos(s)};
    case CurveKind::Ellipse: return {-a_ * std::sin(s), b_ * std::cos(s)};
    case CurveKind::Polar: {
        const double c = std::cos(s), sn = std::sin(s);
        return {-sn * (1.0 + c), c + 0.5 * (c * c - sn * sn)};
    }
    case CurveKind::TabulatedConvex: {
        const auto& t = *table_;
        const double sw = wrap(s);
        auto [i, h] = locate(t, sw, period_);
        const std::size_t j = (i + 1) % t.s.size();
        const double u = (sw - t.s[i]) / h;
        const double u2 = u * u;
        const double d00 = 6 * u2 - 6 * u, d10 = 3 * u2 - 4 * u + 1;
        const double d01 = -6 * u2 + 6 * u, d11 = 3 * u2 - 2 * u;
        return (d00 / h) * t.p[i] + d10 * t.m[i] + (d01 / h) * t.p[j] + d11 * t.m[j];
    }
    }
    return {};
}

double AcquisitionCurve::containment(Vec2 p) const {
    switch (kind_) {
    case CurveKind::UnitCircle: return 1.0 - dot(p, p);
    case CurveKind::Ellipse: return 1.0 - (p.x / a_) * (p.x / a_) - (p.y / b_) * (p.y / b_);
    case CurveKind::Polar: {
        const Vec2 d = p - kPolarPole;
        return polar_radius(std::atan2(d.y, d.x)) - norm(d);
    }
    case CurveKind::TabulatedConvex: {
        // Signed distance to the dense polyline; sign from ray casting.
        const auto& pts = table_->dense;
        const std::size_t n = pts.size();
        bool inside = false;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0, l = n - 1; k < n; l = k++) {
            const Vec2 a = pts[l], b = pts[k];
            if ((b.y > p.y) != (a.y > p.y)) {
                const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_cross) inside = !inside;
            }
            best = std::min(best, segment_distance(p, a, b));
        }
        // Close to the curve the polyline is off by its chord sag; measure
        // against the spline instead.
        const double chord = period_ / static_cast<double>(n) * 4.0;
        if (best < chord) {
            const double s = parameter_of(p);
            const Vec2 q = point(s);
            const double side = cross(derivative(s), p - q);
            const double dist = norm(p - q);
            return (side > 0.0) == ccw_ ? dist : -dist;
        }
        return inside ? best : -best;
    }
    }
    return 0.0;
}

double AcquisitionCurve::parameter_of(Vec2 p) const {
    switch (kind_) {
    case CurveKind::UnitCircle: return wrap_angle(std::atan2(p.y, p.x));
    case CurveKind::Ellipse: return wrap_angle(std::atan2(p.y / b_, p.x / a_));
    case CurveKind::Polar: return wrap_angle(std::atan2(p.y - kPolarPole.y, p.x - kPolarPole.x));
    case CurveKind::TabulatedConvex: {
        const auto& t = *table_;
        const std::size_t n = t.dense.size();
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            const double d = distance(p, t.dense[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        // Golden-section refinement on |z(s) - p| over the two adjacent spans.
        const double step = period_ / static_cast<double>(n);
        double lo = t.ds[best] - step, hi = t.ds[best] + step;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = distance(point(c), p), fd = distance(point(d), p);
        for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, period_); ++it) {
            if (fc < fd) {
                hi = d; d = c; fd = fc;
                c = hi - g * (hi - lo);
                fc = distance(point(c), p);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + g * (hi - lo);
                fd = distance(point(d), p);
            }
        }
        return wrap(0.5 * (lo + hi));
    }
    }
    return 0.0;
}

bool AcquisitionCurve::is_convex(int samples) const {
    std::vector<Vec2> pts(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        pts[static_cast<std::size_t>(k)] = point(s0_ + period_ * k / samples);
    }
    const std::size_t n = pts.size();
    double scale = 0.0;
    std::vector<double> turns(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 d0 = pts[(k + 1) % n] - pts[k];
        const Vec2 d1 = pts[(k + 2) % n] - pts[(k + 1) % n];
        turns[k] = cross(d0, d1);
        scale = std::max(scale, dot(d0, d0));
    }
    // Flat points (zero curvature) are allowed; only a sign flip beyond
    // roundoff breaks convexity.
    const double tol = 1e-9 * scale;
    bool pos = false, neg = false;
    for (double c : turns) {
        if (c > tol) pos = true;
        if (c < -tol) neg = true;
    }
    return !(pos && neg);
}

double AcquisitionCurve::bounding_radius() const {
    double r = 0.0;
    for (int k = 0; k < 4096; ++k) r = std::max(r, norm(point(s0_ + period_ * k / 4096.0)));
    return r;
}

double AcquisitionCurve::diameter() const {
    if (kind_ == CurveKind::UnitCircle) return 2.0;
    constexpr int n = 2048;
    std::vector<Vec2> pts(n);
    for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = point(s0_ + period_ * k / n);
    double d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
    }
    return d;
}

Vec2 curve_point(const AcquisitionCurve& curve, double s) { return curve.point(s); }

Frame curve_frame(const AcquisitionCurve& curve, double s) {
    const Vec2 d = curve.derivative(s);
    const double speed = norm(d);
    if (speed < 1e-10) throw Error(ErrorKind::DegenerateTangent, "|z'(s)| below 1e-10");
    const Vec2 t = d / speed;
    const Vec2 n = curve.counter_clockwise() ? Vec2{t.y, -t.x} : Vec2{-t.y, t.x};
    return {t, n, speed};
}

Arc::Arc(AcquisitionCurve curve, double s_start, double s_end)
    : curve_(std::move(curve)), s_start_(s_start), s_end_(s_end) {
    if (!(s_start < s_end)) throw Error(ErrorKind::Validation, "arc needs s_start < s_end");
    if (s_end - s_start > curve_.period() * (1.0 + 1e-12)) {
        throw Error(ErrorKind::Validation, "arc longer than one curve period");
    }
}

Arc Arc::full(AcquisitionCurve curve) {
    const double s0 = curve.start_parameter();
    const double p = curve.period();
    return Arc(std::move(curve), s0, s0 + p);
}

bool Arc::is_full() const { return std::abs(length() - curve_.period()) <= 1e-12 * curve_.period(); }

double Arc::offset_of(double s) const {
    const double p = curve_.period();
    double off = std::fmod(s - s_start_, p);
    if (off < 0.0) off += p;
    return off;
}

RayIntersections ray_intersections(const AcquisitionCurve& curve, Vec2 x, Vec2 xi) {
    const double xi_norm = norm(xi);
    if (!(xi_norm > 0.0)) throw Error(ErrorKind::Validation, "covector direction must be nonzero");
    if (!curve.strictly_inside(x)) throw Error(ErrorKind::NotInside, "point is not strictly inside the curve");
    const Vec2 dir = xi / xi_norm;

    auto solve = [&](Vec2 d) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; curve.containment(x + hi * d) >= 0.0; ++it) {
            lo = hi;
            hi *= 2.0;
            if (it > 60) throw Error(ErrorKind::NotInside, "ray does not leave the curve");
        }
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (curve.containment(x + mid * d) > 0.0) lo = mid; else hi = mid;
        }
        double t = 0.5 * (lo + hi);
        Vec2 p = x + t * d;
        double s = curve.parameter_of(p);
        if (curve.kind() == CurveKind::TabulatedConvex) {
            // Containment follows the dense polyline; move the hit onto the
            // spline itself with Newton steps on cross(z(s) - x, d) = 0.
            for (int it = 0; it < 8; ++it) {
                const double f = cross(curve.point(s) - x, d);
                const double df = cross(curve.derivative(s), d);
                if (df == 0.0) break;
                const double step = f / df;
                s -= step;
                if (std::abs(step) < 1e-15 * curve.period()) break;
            }
            p = curve.point(s);
            t = dot(p - x, d);
            s = curve.parameter_of(p);
        }
        return RayHit{p, s, t};
    };

    RayHit plus = solve(dir);
    RayHit minus = solve(-dir);
    plus.t /= xi_norm;
    minus.t = -minus.t / xi_norm;
    return {plus, minus};
}

const char* to_string(Visibility v) {
    switch (v) {
    case Visibility::DoublyVisible: return "doubly_visible";
    case Visibility::SinglyVisible: return "singly_visible";
    case Visibility::Invisible: return "invisible";
    case Visibility::Boundary: return "boundary";
    }
    return "?";
}

Visibility classify_covector(const Arc& arc, const Covector& cov) {
    const auto hits = ray_intersections(arc.curve(), cov.x, cov.xi);
    if (arc.is_full()) return Visibility::DoublyVisible;

    const double len = arc.length();
    const double period = arc.curve().period();
    auto near_endpoint = [&](double s) {
        const double off = arc.offset_of(s);
        return off < kBoundaryParameterTolerance || std::abs(off - len) < kBoundaryParameterTolerance ||
               period - off < kBoundaryParameterTolerance;
    };
    if (near_endpoint(hits.plus.s) || near_endpoint(hits.minus.s)) return Visibility::Boundary;

    const int seen = (arc.offset_of(hits.plus.s) < len) + (arc.offset_of(hits.minus.s) < len);
    switch (seen) {
    case 2: return Visibility::DoublyVisible;
    case 1: return Visibility::SinglyVisible;
    default: return Visibility::Invisible;
    }
}

}  // namespace limview
