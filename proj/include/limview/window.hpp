#pragma once

#include <span>
#include <string>
#include <vector>

namespace limview {

enum class WindowKind { Sharp, Rational, Plateau };

/// Smoothing weight chi on an arc of parameter length b.
///
///   Sharp:    1
///   Rational: (H(s) / H(b/2))^k,  H(s) = s(b - s) / (s(b - s) + eps)
///   Plateau:  h0(s/b)^k with h0(t) = t(2 eps - t) / eps^2 on [0, eps],
///             1 on (eps, 1 - eps), mirrored on [1 - eps, 1]
struct WindowSpec {
    WindowKind kind = WindowKind::Sharp;
    double epsilon = 0.0;
    int order_k = 1;
    double b = 1.0;

    static WindowSpec sharp(double b);
    static WindowSpec rational(double epsilon, int order_k, double b);
    static WindowSpec plateau(double epsilon, int order_k, double b);

    void validate() const;
    /// "sharp", "rational eps=0.2 k=1", ...
    std::string label() const;
};

WindowKind parse_window_kind(const std::string& name);
const char* to_string(WindowKind kind);

/// Throws OutOfRange unless 0 <= s <= b.
double eval_window(const WindowSpec& spec, double s);

/// Window weights at each grid parameter, measured from s_start. Offsets that
/// overshoot [0, b] by roundoff (1e-12 relative) are clamped.
std::vector<double> sample_window(const WindowSpec& spec, std::span<const double> s_grid, double s_start);

/// Least-squares exponent of eval_window(delta) ~ delta^k over delta in
/// b * [1e-5, 1e-2]. The fit includes delta and delta^2 correction terms so
/// that the analytic remainder of the window does not bias the exponent.
double verify_vanishing_order(const WindowSpec& spec);

}  // namespace limview
