#include "limview/window.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "limview/core.hpp"

namespace limview {

WindowSpec WindowSpec::sharp(double b) { return {WindowKind::Sharp, 0.0, 1, b}; }

WindowSpec WindowSpec::rational(double epsilon, int order_k, double b) {
    WindowSpec w{WindowKind::Rational, epsilon, order_k, b};
    w.validate();
    return w;
}

WindowSpec WindowSpec::plateau(double epsilon, int order_k, double b) {
    WindowSpec w{WindowKind::Plateau, epsilon, order_k, b};
    w.validate();
    return w;
}

void WindowSpec::validate() const {
    if (!(b > 0.0)) throw Error(ErrorKind::Validation, "window arc length b must be positive");
    if (kind == WindowKind::Sharp) return;
    if (order_k < 1) throw Error(ErrorKind::Validation, "window order k must be >= 1");
    if (kind == WindowKind::Rational && !(epsilon > 0.0)) {
        throw Error(ErrorKind::Validation, "rational window needs eps > 0");
    }
    if (kind == WindowKind::Plateau && !(epsilon > 0.0 && epsilon < 0.5)) {
        throw Error(ErrorKind::Validation, "plateau window needs eps in (0, 0.5)");
    }
}

std::string WindowSpec::label() const {
    std::ostringstream os;
    os << to_string(kind);
    if (kind != WindowKind::Sharp) os << " eps=" << epsilon << " k=" << order_k;
    return os.str();
}

WindowKind parse_window_kind(const std::string& name) {
    if (name == "sharp") return WindowKind::Sharp;
    if (name == "rational") return WindowKind::Rational;
    if (name == "plateau") return WindowKind::Plateau;
    throw Error(ErrorKind::Validation, "unknown window '" + name + "' (expected sharp|rational|plateau)");
}

const char* to_string(WindowKind kind) {
    switch (kind) {
    case WindowKind::Sharp: return "sharp";
    case WindowKind::Rational: return "rational";
    case WindowKind::Plateau: return "plateau";
    }
    return "?";
}

namespace {

double rational_base(double s, double b, double eps) {
    const double q = s * (b - s);
    return q / (q + eps);
}

double plateau_base(double sigma, double eps) {
    const double t = sigma <= 0.5 ? sigma : 1.0 - sigma;
    if (t >= eps) return 1.0;
    return t * (2.0 * eps - t) / (eps * eps);
}

}  // namespace

double eval_window(const WindowSpec& spec, double s) {
    if (!(s >= 0.0 && s <= spec.b)) throw Error(ErrorKind::OutOfRange, "window argument outside [0, b]");
    switch (spec.kind) {
    case WindowKind::Sharp: return 1.0;
    case WindowKind::Rational: {
        const double h = rational_base(s, spec.b, spec.epsilon) / rational_base(0.5 * spec.b, spec.b, spec.epsilon);
        return std::pow(h, spec.order_k);
    }
    case WindowKind::Plateau: return std::pow(plateau_base(s / spec.b, spec.epsilon), spec.order_k);
    }
    return 0.0;
}

std::vector<double> sample_window(const WindowSpec& spec, std::span<const double> s_grid, double s_start) {
    std::vector<double> w(s_grid.size());
    const double slack = 1e-12 * std::max(1.0, spec.b);
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        double off = s_grid[i] - s_start;
        if (off < 0.0 && off > -slack) off = 0.0;
        if (off > spec.b && off < spec.b + slack) off = spec.b;
        w[i] = eval_window(spec, off);
    }
    return w;
}

double verify_vanishing_order(const WindowSpec& spec) {
    if (spec.kind == WindowKind::Sharp) throw Error(ErrorKind::Validation, "sharp window has no vanishing order");
    spec.validate();
    // Normal equations for y = k log(delta) + c + d1 delta + d2 delta^2.
    constexpr int kPoints = 13;
    constexpr int kTerms = 4;
    std::array<std::array<double, kTerms + 1>, kTerms> ata{};
    for (int p = 0; p < kPoints; ++p) {
        const double delta = spec.b * std::pow(10.0, -2.0 - 3.0 * p / (kPoints - 1));
        const double y = std::log(eval_window(spec, delta));
        const double u = delta / (spec.b * 1e-2);
        const std::array<double, kTerms> row{std::log(delta), 1.0, u, u * u};
        for (int a = 0; a < kTerms; ++a) {
            for (int c = 0; c < kTerms; ++c) ata[a][c] += row[a] * row[c];
            ata[a][kTerms] += row[a] * y;
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < kTerms; ++col) {
        int piv = col;
        for (int r = col + 1; r < kTerms; ++r) {
            if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
        }
        std::swap(ata[col], ata[piv]);
        for (int r = col + 1; r < kTerms; ++r) {
            const double f = ata[r][col] / ata[col][col];
            for (int c = col; c <= kTerms; ++c) ata[r][c] -= f * ata[col][c];
        }
    }
    std::array<double, kTerms> coef{};
    for (int r = kTerms - 1; r >= 0; --r) {
        double acc = ata[r][kTerms];
        for (int c = r + 1; c < kTerms; ++c) acc -= ata[r][c] * coef[c];
        coef[r] = acc / ata[r][r];
    }
    return coef[0];
}

}  // namespace limview
