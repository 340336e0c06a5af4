#include "limview/filter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "interp.hpp"

namespace limview {

namespace {

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <typename T>
struct FftwFree {
    void operator()(T* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree<T>>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

double t_spacing(std::span<const double> r_grid, const FilterPlan& plan) {
    const double r_max = r_grid.back();
    return r_max * r_max / (plan.n_t() - 1);
}

void check_row(std::span<const double> row, std::span<const double> r_grid) {
    if (row.size() != r_grid.size()) throw Error(ErrorKind::Validation, "row and radial grid sizes differ");
    if (row.size() < 3) throw Error(ErrorKind::Validation, "filter needs at least 3 radial samples");
    require_uniform_from_zero(r_grid);
    for (double v : row) {
        if (!std::isfinite(v)) throw Error(ErrorKind::Validation, "row contains non-finite values");
    }
}

}  // namespace

struct FilterPlan::Transform {
    int length = 0;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Transform(int n) : length(n) {
        auto real = fftw_buffer<double>(static_cast<std::size_t>(n));
        auto spec = fftw_buffer<fftw_complex>(static_cast<std::size_t>(n / 2 + 1));
        // FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding,
        // identical from run to run.
        std::lock_guard lock(planner_mutex());
        forward = fftw_plan_dft_r2c_1d(n, real.get(), spec.get(), FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(n, spec.get(), real.get(), FFTW_ESTIMATE);
    }
    ~Transform() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;
};

FilterPlan::FilterPlan(int n_dim, int n_t, int pad_factor, double taper_fraction)
    : n_dim_(n_dim), n_t_(n_t), pad_factor_(pad_factor), taper_fraction_(taper_fraction) {
    if (n_dim != 2 && n_dim != 3) throw Error(ErrorKind::Validation, "filter dimension must be 2 or 3");
    if (n_t < 3) throw Error(ErrorKind::Validation, "filter needs n_t >= 3");
    if (pad_factor < 2) throw Error(ErrorKind::Validation, "pad factor must be >= 2");
    if (!(taper_fraction >= 0.0 && taper_fraction <= 0.5)) {
        throw Error(ErrorKind::Validation, "taper fraction must lie in [0, 0.5]");
    }
    transform_ = std::make_shared<const Transform>(transform_length());
}

FilterPlan FilterPlan::for_radial_samples(int n_r, int n_dim, int pad_factor, double taper_fraction) {
    return FilterPlan(n_dim, 2 * n_r, pad_factor, taper_fraction);
}

double FilterPlan::taper(int m) const {
    if (taper_fraction_ <= 0.0) return 1.0;
    const double f = static_cast<double>(m) / (0.5 * transform_length());
    const double knee = 1.0 - taper_fraction_;
    if (f <= knee) return 1.0;
    return 0.5 * (1.0 + std::cos(kPi * (f - knee) / taper_fraction_));
}

double FilterPlan::gain(int m, double dt) const {
    const double lambda = kTwoPi * m / (transform_length() * dt);
    return kTwoPi * std::pow(std::abs(lambda), n_dim_ - 1) * taper(m);
}

void FilterPlan::apply_symbol(std::span<double> samples, double dt) const {
    const int n = transform_length();
    if (samples.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::Validation, "buffer length differs from the transform length");
    }
    auto real = fftw_buffer<double>(static_cast<std::size_t>(n));
    auto spec = fftw_buffer<fftw_complex>(static_cast<std::size_t>(n / 2 + 1));
    std::copy(samples.begin(), samples.end(), real.get());
    fftw_execute_dft_r2c(transform_->forward, real.get(), spec.get());
    const double inv_n = 1.0 / n;
    for (int m = 0; m <= n / 2; ++m) {
        const double g = gain(m, dt) * inv_n;
        spec[m][0] *= g;
        spec[m][1] *= g;
    }
    fftw_execute_dft_c2r(transform_->backward, spec.get(), real.get());
    std::copy(real.get(), real.get() + n, samples.begin());
}

std::vector<double> resample_to_squared_radius(std::span<const double> row, std::span<const double> r_grid,
                                               const FilterPlan& plan) {
    const detail::CubicSpline h(r_grid, row);
    const double dt = t_spacing(r_grid, plan);
    std::vector<double> out(static_cast<std::size_t>(plan.n_t()), 0.0);
    for (int k = 1; k < plan.n_t(); ++k) {
        const double r = std::sqrt(k * dt);
        out[static_cast<std::size_t>(k)] = h(r) / (2.0 * r);
    }
    return out;
}

std::vector<double> resample_to_radius(std::span<const double> t_values, std::span<const double> r_grid) {
    const double r_max = r_grid.back();
    const auto t_grid = uniform_grid(0.0, r_max * r_max, static_cast<int>(t_values.size()));
    const detail::CubicSpline f(t_grid, t_values);
    std::vector<double> out(r_grid.size());
    for (std::size_t j = 0; j < r_grid.size(); ++j) out[j] = f(r_grid[j] * r_grid[j]);
    return out;
}

std::vector<double> filter_row(std::span<const double> row, std::span<const double> r_grid, const FilterPlan& plan) {
    check_row(row, r_grid);
    const double dt = t_spacing(r_grid, plan);
    auto weighted = resample_to_squared_radius(row, r_grid, plan);
    // Trapezoid weights in t.
    weighted.front() *= 0.5;
    weighted.back() *= 0.5;

    std::vector<double> buffer(static_cast<std::size_t>(plan.transform_length()), 0.0);
    std::copy(weighted.begin(), weighted.end(), buffer.begin());
    plan.apply_symbol(buffer, dt);
    buffer.resize(static_cast<std::size_t>(plan.n_t()));
    return resample_to_radius(buffer, r_grid);
}

std::vector<double> filter_row_oracle(std::span<const double> row, std::span<const double> r_grid,
                                      const FilterPlan& plan) {
    check_row(row, r_grid);
    const double dt = t_spacing(r_grid, plan);
    auto weighted = resample_to_squared_radius(row, r_grid, plan);
    weighted.front() *= 0.5;
    weighted.back() *= 0.5;

    // Kernel K(d) = sum_m dlambda dt c_m |lambda_m|^(n-1) taper cos(lambda_m d dt) over
    // m = -L/2..L/2 with half weight c_m at the band edges; dlambda dt = 2 pi / L.
    const int n_t = plan.n_t();
    const int len = plan.transform_length();
    const int half = len / 2;
    const double dlambda = kTwoPi / (len * dt);
    std::vector<double> kernel(static_cast<std::size_t>(n_t), 0.0);
    for (int d = 0; d < n_t; ++d) {
        double acc = 0.0;
        for (int m = 1; m <= half; ++m) {
            const double lambda = m * dlambda;
            const double edge = (m == half) ? 0.5 : 1.0;
            acc += 2.0 * edge * std::pow(lambda, plan.n_dim() - 1) * plan.taper(m) * std::cos(lambda * d * dt);
        }
        kernel[static_cast<std::size_t>(d)] = acc * dlambda * dt;
    }

    std::vector<double> filtered(static_cast<std::size_t>(n_t), 0.0);
    for (int k = 0; k < n_t; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n_t; ++j) acc += weighted[static_cast<std::size_t>(j)] * kernel[static_cast<std::size_t>(std::abs(k - j))];
        filtered[static_cast<std::size_t>(k)] = acc;
    }
    return resample_to_radius(filtered, r_grid);
}

Sinogram filter_sinogram(const Sinogram& sino, const FilterPlan& plan, int threads) {
    Sinogram out = sino;
    parallel_for(static_cast<std::size_t>(sino.n_a()), threads, [&](std::size_t i) {
        const auto filtered = filter_row(sino.row(static_cast<int>(i)), sino.r_grid(), plan);
        std::copy(filtered.begin(), filtered.end(), out.row(static_cast<int>(i)).begin());
    });
    return out;
}

}  // namespace limview
