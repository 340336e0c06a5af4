#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "limview/backprojection.hpp"

using namespace limview;

namespace {

const DiscPhantom kDisc{{0.0, 0.0}, 0.3, 1.0};

double rms_diff(const RasterImage& a, const RasterImage& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) acc += (a.values[k] - b.values[k]) * (a.values[k] - b.values[k]);
    return std::sqrt(acc / static_cast<double>(a.values.size()));
}

double rms(const RasterImage& a) {
    double acc = 0.0;
    for (double v : a.values) acc += v * v;
    return std::sqrt(acc / static_cast<double>(a.values.size()));
}

Sinogram random_sinogram(const Arc& arc, int n_a, int n_r, unsigned seed) {
    Sinogram s(arc.curve(), arc.s_start(), arc.s_end(), n_a, n_r, 2.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& v : s.values()) v = g(rng);
    return s;
}

// Interior L2 error against the phantom, ignoring pixels within 3 pixels of
// the disc edge.
double interior_error(const RasterImage& img, const DiscPhantom& disc) {
    double acc = 0.0;
    int count = 0;
    for (int i = 0; i < img.n; ++i) {
        for (int j = 0; j < img.n; ++j) {
            const double d = distance(img.center(i, j), disc.center);
            if (std::abs(d - disc.radius) <= 3 * img.pixel_size()) continue;
            const double truth = d <= disc.radius ? disc.amplitude : 0.0;
            acc += (img.at(i, j) - truth) * (img.at(i, j) - truth);
            ++count;
        }
    }
    return std::sqrt(acc / count);
}

}  // namespace

TEST(ReconGrid, RejectsGridOutsideCurve) {
    const auto circle = AcquisitionCurve::unit_circle();
    EXPECT_NO_THROW((ReconGrid{64, 0.7}.validate(circle)));
    try {
        ReconGrid{64, 0.75}.validate(circle);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridOutsideDomain);
    }
    EXPECT_THROW((ReconGrid{1, 0.5}.validate(circle)), Error);
}

TEST(Backproject, ZeroSinogramGivesZeroImage) {
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, kPi);
    const Sinogram zero(arc.curve(), arc.s_start(), arc.s_end(), 16, 32, 2.0);
    const std::vector<double> w(16, 1.0);
    for (double v : backproject(zero, w, ReconGrid{16, 0.6}).values) EXPECT_EQ(v, 0.0);
}

TEST(Backproject, WeightLengthMismatch) {
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, kPi);
    const Sinogram s(arc.curve(), arc.s_start(), arc.s_end(), 16, 32, 2.0);
    const std::vector<double> w(15, 1.0);
    EXPECT_THROW(backproject(s, w, ReconGrid{16, 0.6}), Error);
}

TEST(Backproject, SingleRowMatchesDirectSum) {
    const auto curve = AcquisitionCurve::ellipse(1.2, 0.9);
    const Arc arc(curve, 0.3, 2.5);
    Sinogram s(curve, arc.s_start(), arc.s_end(), 9, 41, 2.0);
    const int active = 4;
    for (int j = 0; j < s.n_r(); ++j) s.at(active, j) = 0.5 + 0.1 * j;
    std::vector<double> w(9, 0.0);
    w[active] = 0.8;
    const ReconGrid grid{12, 0.6};
    const auto img = backproject(s, w, grid);

    const double si = s.s_grid()[active];
    const Vec2 z = curve.point(si);
    const Vec2 dz = curve.derivative(si);
    const Vec2 nu = normalized(Vec2{dz.y, -dz.x});
    for (int r = 0; r < grid.n; ++r) {
        for (int c = 0; c < grid.n; ++c) {
            const Vec2 x = img.center(r, c);
            const double rad = distance(x, z);
            const double pos = rad / s.dr();
            const int j = static_cast<int>(pos);
            const double g = (1 - (pos - j)) * s.at(active, j) + (pos - j) * s.at(active, j + 1);
            const double expected = 0.8 * s.ds() * norm(dz) * dot(z - x, nu) * g / (2 * kPi * kPi);
            EXPECT_NEAR(img.at(r, c), expected, 1e-13);
        }
    }
}

TEST(Backproject, SingleRowSupportedOnAnnulus) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    Sinogram s(arc.curve(), arc.s_start(), arc.s_end(), 32, 201, 2.0);
    const int active = 5;
    // Nonzero only for r in [0.8, 1.2].
    for (int j = 80; j <= 120; ++j) s.at(active, j) = 1.0;
    std::vector<double> w(32, 1.0);
    const auto img = backproject(s, w, ReconGrid{64, 0.7});
    const Vec2 z = arc.curve().point(s.s_grid()[active]);
    for (int r = 0; r < img.n; ++r) {
        for (int c = 0; c < img.n; ++c) {
            const double d = distance(img.center(r, c), z);
            if (d < 0.8 - s.dr() || d > 1.2 + s.dr()) { EXPECT_EQ(img.at(r, c), 0.0); }
        }
    }
    // Scaling the weight of the active row scales the image.
    w[active] = -2.5;
    const auto scaled = backproject(s, w, ReconGrid{64, 0.7});
    for (std::size_t k = 0; k < img.values.size(); ++k) EXPECT_NEAR(scaled.values[k], -2.5 * img.values[k], 1e-15);
}

TEST(BackprojectProperty, LinearInSinogramAndWeights) {
    const Arc arc(AcquisitionCurve::polar(), 0.5, 4.5);
    const auto a = random_sinogram(arc, 24, 40, 1);
    const auto b = random_sinogram(arc, 24, 40, 2);
    Sinogram combo = a;
    for (std::size_t k = 0; k < combo.values().size(); ++k) combo.values()[k] = 2.0 * a.values()[k] - 0.7 * b.values()[k];
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w1(24), w2(24), w12(24);
    for (int i = 0; i < 24; ++i) {
        w1[i] = u(rng);
        w2[i] = u(rng);
        w12[i] = 0.4 * w1[i] + 1.3 * w2[i];
    }
    const ReconGrid grid{20, 0.6};
    const auto ia = backproject(a, w1, grid), ib = backproject(b, w1, grid), ic = backproject(combo, w1, grid);
    for (std::size_t k = 0; k < ic.values.size(); ++k) {
        EXPECT_NEAR(ic.values[k], 2.0 * ia.values[k] - 0.7 * ib.values[k], 1e-10 * rms(ic) + 1e-14);
    }
    const auto j1 = backproject(a, w1, grid), j2 = backproject(a, w2, grid), j12 = backproject(a, w12, grid);
    for (std::size_t k = 0; k < j12.values.size(); ++k) {
        EXPECT_NEAR(j12.values[k], 0.4 * j1.values[k] + 1.3 * j2.values[k], 1e-10 * rms(j12) + 1e-14);
    }
}

TEST(BackprojectProperty, IndependentOfThreadCount) {
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, 4.0);
    const auto s = random_sinogram(arc, 30, 50, 9);
    const std::vector<double> w(30, 1.0);
    EXPECT_EQ(backproject(s, w, ReconGrid{33, 0.65}, 1).values, backproject(s, w, ReconGrid{33, 0.65}, 4).values);
}

TEST(Reconstruct, ZeroAmplitudePhantomGivesZero) {
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, kPi / 2);
    const auto img = reconstruct(Phantom{{DiscPhantom{{0, 0}, 0.3, 0.0}}}, arc, SamplingSpec{64, 64, 2.0},
                                 WindowSpec::rational(0.2, 1, arc.length()), FilterPlan::for_radial_samples(64),
                                 ReconGrid{32, 0.7});
    for (double v : img.values) EXPECT_EQ(v, 0.0);
}

TEST(Reconstruct, SharpFullCircleEqualsUnweightedInversion) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    const auto data = sample_sinogram(Phantom{{kDisc}}, arc, 64, 64, 2.0);
    const auto plan = FilterPlan::for_radial_samples(64);
    const ReconGrid grid{24, 0.7};
    const auto windowed = reconstruct(data, WindowSpec::sharp(arc.length()), plan, grid);
    const std::vector<double> ones(64, 1.0);
    const auto direct = backproject(filter_sinogram(data, plan), ones, grid);
    EXPECT_EQ(windowed.values, direct.values);
}

TEST(Reconstruct, FullCirclePlateauNearOne) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    const auto img = reconstruct(Phantom{{kDisc}}, arc, SamplingSpec{256, 256, 2.0}, WindowSpec::sharp(arc.length()),
                                 FilterPlan::for_radial_samples(256), ReconGrid{64, 0.7});
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < img.n; ++i) {
        for (int j = 0; j < img.n; ++j) {
            if (norm(img.center(i, j)) < 0.15) {
                sum += img.at(i, j);
                ++count;
            }
        }
    }
    EXPECT_NEAR(sum / count, 1.0, 0.05);
}

TEST(ReconstructProperty, RotationEquivariance) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    const SamplingSpec sampling{256, 256, 2.0};
    const auto plan = FilterPlan::for_radial_samples(256);
    const WindowSpec sharp = WindowSpec::sharp(arc.length());
    const ReconGrid grid{256, 0.7};
    const DiscPhantom base{{0.25, 0.1}, 0.2, 1.0};
    const double theta = 0.6;
    const Vec2 rotated_center{std::cos(theta) * base.center.x - std::sin(theta) * base.center.y,
                              std::sin(theta) * base.center.x + std::cos(theta) * base.center.y};
    const auto img = reconstruct(Phantom{{base}}, arc, sampling, sharp, plan, grid);
    const auto img_rot = reconstruct(Phantom{{DiscPhantom{rotated_center, 0.2, 1.0}}}, arc, sampling, sharp, plan, grid);
    // Compare the disc interior away from the edge. Outside, the ringing has
    // pixel-scale oscillation that bilinear resampling cannot carry across
    // an off-grid rotation; the quarter-turn test covers the whole image.
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            const Vec2 p = img_rot.center(i, j);
            if (distance(p, rotated_center) > 0.2 - 3.0 * img.pixel_size()) continue;
            const Vec2 back{std::cos(theta) * p.x + std::sin(theta) * p.y, -std::sin(theta) * p.x + std::cos(theta) * p.y};
            const double diff = img_rot.at(i, j) - img.sample(back);
            num += diff * diff;
            den += img_rot.at(i, j) * img_rot.at(i, j);
        }
    }
    EXPECT_LT(std::sqrt(num / den), 2e-3);
}

TEST(ReconstructProperty, QuarterTurnPermutesPixels) {
    // The arc grid holds both endpoints, so with n_a = 4m + 1 a quarter turn
    // maps the arc samples and the pixel grid onto themselves.
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    const SamplingSpec sampling{129, 128, 2.0};
    const auto plan = FilterPlan::for_radial_samples(128);
    const WindowSpec sharp = WindowSpec::sharp(arc.length());
    const ReconGrid grid{64, 0.7};
    const auto img = reconstruct(Phantom{{DiscPhantom{{0.25, 0.1}, 0.2, 1.0}}}, arc, sampling, sharp, plan, grid);
    const auto img_rot = reconstruct(Phantom{{DiscPhantom{{-0.1, 0.25}, 0.2, 1.0}}}, arc, sampling, sharp, plan, grid);
    double peak = 0.0;
    for (double v : img.values) peak = std::max(peak, std::abs(v));
    const int n = grid.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // (x, y) -> (-y, x): row i, col j lands on row n-1-j, col i.
            EXPECT_NEAR(img_rot.at(n - 1 - j, i), img.at(i, j), 1e-9 * peak) << i << "," << j;
        }
    }
}

TEST(ReconstructProperty, RefinementReducesError) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    const WindowSpec sharp = WindowSpec::sharp(arc.length());
    const ReconGrid grid{96, 0.7};
    double previous = 1e9;
    for (int n : {64, 128, 256}) {
        const auto img = reconstruct(Phantom{{kDisc}}, arc, SamplingSpec{n, n, 2.0}, sharp,
                                     FilterPlan::for_radial_samples(n), grid);
        const double err = interior_error(img, kDisc);
        EXPECT_LT(err, previous) << "n=" << n;
        previous = err;
    }
}

TEST(Reconstruct, RejectsPhantomTouchingCurve) {
    const Arc arc = Arc::full(AcquisitionCurve::unit_circle());
    EXPECT_THROW(reconstruct(Phantom{{DiscPhantom{{0.75, 0}, 0.3, 1}}}, arc, SamplingSpec{32, 32, 2.0},
                             WindowSpec::sharp(arc.length()), FilterPlan::for_radial_samples(32), ReconGrid{16, 0.5}),
                 Error);
}

TEST(Reconstruct, MatchesRmsOfTwoPaths) {
    // Phantom path and stored-sinogram path give identical images.
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, 1.5 * kPi);
    const Phantom p{{kDisc}};
    const auto plan = FilterPlan::for_radial_samples(48);
    const auto window = WindowSpec::plateau(0.25, 2, arc.length());
    const auto a = reconstruct(p, arc, SamplingSpec{40, 48, 2.0}, window, plan, ReconGrid{20, 0.7});
    const auto b = reconstruct(sample_sinogram(p, arc, 40, 48, 2.0), window, plan, ReconGrid{20, 0.7});
    EXPECT_EQ(rms_diff(a, b), 0.0);
}
