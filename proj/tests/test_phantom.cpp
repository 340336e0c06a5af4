#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "limview/phantom.hpp"

using namespace limview;

namespace {

const DiscPhantom kDisc{{0.0, 0.0}, 0.3, 1.0};

// Midpoint rule on the indicator along the circle.
double quadrature_mean(const DiscPhantom& disc, Vec2 z, double r, int samples) {
    double acc = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Vec2 p = z + r * polar_unit(kTwoPi * (k + 0.5) / samples);
        if (distance(p, disc.center) <= disc.radius) acc += disc.amplitude;
    }
    return acc * kTwoPi * r / samples;
}

}  // namespace

TEST(CircularMean, DisjointCircleIsZero) { EXPECT_EQ(circular_mean(kDisc, {1, 0}, 0.5), 0.0); }

TEST(CircularMean, CircleInsideDisc) { EXPECT_NEAR(circular_mean(kDisc, {0, 0}, 0.2), kTwoPi * 0.2, 1e-15); }

TEST(CircularMean, PartialOverlapMatchesQuadrature) {
    const double expected = 2.0 * 1.0 * std::acos((1.0 + 1.0 - 0.09) / 2.0);
    EXPECT_NEAR(circular_mean(kDisc, {1, 0}, 1.0), expected, 1e-15);
    EXPECT_NEAR(expected, 0.60227, 1e-5);
    const double q = quadrature_mean(kDisc, {1, 0}, 1.0, 1'000'000);
    EXPECT_LT(std::abs(q - expected) / expected, 1e-4);
}

TEST(CircularMean, ZeroRadius) { EXPECT_EQ(circular_mean(kDisc, {0, 0}, 0.0), 0.0); }

TEST(CircularMeanProperty, RandomPairsMatchQuadrature) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const DiscPhantom disc{{0.1, -0.05}, 0.3, 1.7};
    int checked = 0;
    while (checked < 100) {
        const Vec2 z = polar_unit(angle(rng));
        const double d = distance(z, disc.center);
        const double r = (d - disc.radius) + unit(rng) * 2.0 * disc.radius;
        const double exact = circular_mean(disc, z, r);
        // Skip near-tangent circles where the overlap arc is tiny.
        if (exact < 0.2) continue;
        ++checked;
        const double q = quadrature_mean(disc, z, r, 1'000'000);
        EXPECT_LT(std::abs(q - exact) / exact, 1e-4) << "r=" << r;
    }
}

TEST(CircularMeanProperty, ContinuousAtCaseSeams) {
    const DiscPhantom disc{{0.0, 0.0}, 0.3, 1.0};
    // Inside seam: r = rho - d. arccos has a square-root cusp at -1, so a
    // 1e-12 step in r moves the value by about 1e-6.
    const Vec2 z_in{0.1, 0.0};
    const double seam_in = 0.3 - 0.1;
    EXPECT_NEAR(circular_mean(disc, z_in, seam_in - 1e-12), circular_mean(disc, z_in, seam_in + 1e-12), 1e-5);
    EXPECT_NEAR(circular_mean(disc, z_in, seam_in + 1e-12), kTwoPi * seam_in, 1e-5);
    // Outside seams: r = d - rho and r = d + rho.
    const Vec2 z_out{1.0, 0.0};
    for (double seam : {0.7, 1.3}) {
        EXPECT_NEAR(circular_mean(disc, z_out, seam - 1e-12), circular_mean(disc, z_out, seam + 1e-12), 1e-5);
        EXPECT_NEAR(circular_mean(disc, z_out, seam), 0.0, 1e-5);
    }
}

TEST(CircularMeanProperty, LinearAndAdditive) {
    const DiscPhantom a{{0.1, 0.2}, 0.2, 1.0};
    const DiscPhantom b{{-0.2, 0.0}, 0.25, -0.4};
    const Phantom both{{a, b}};
    for (double r : {0.6, 0.9, 1.1, 1.25}) {
        const Vec2 z = polar_unit(0.7);
        EXPECT_NEAR(circular_mean(both, z, r), circular_mean(a, z, r) + circular_mean(b, z, r), 1e-14);
        DiscPhantom scaled = a;
        scaled.amplitude = 3.5;
        EXPECT_NEAR(circular_mean(scaled, z, r), 3.5 * circular_mean(a, z, r), 1e-14);
    }
}

TEST(CircularMeanProperty, RotationSymmetryForCenteredDisc) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> radius(0.6, 1.4);
    for (int k = 0; k < 200; ++k) {
        const double r = radius(rng);
        const double ref = circular_mean(kDisc, {1.0, 0.0}, r);
        EXPECT_NEAR(circular_mean(kDisc, polar_unit(angle(rng)), r), ref, 1e-12);
    }
}

TEST(Rasterize, CoarseGridsFromPixelCenters) {
    const Phantom p{{kDisc}};
    const auto four = rasterize(p, 4, 1.0);
    for (double v : four.values) EXPECT_EQ(v, 0.0);
    const auto eight = rasterize(p, 8, 1.0);
    EXPECT_EQ(eight.at(3, 3), 1.0);
    EXPECT_EQ(eight.at(3, 4), 1.0);
    EXPECT_EQ(eight.at(4, 3), 1.0);
    EXPECT_EQ(eight.at(4, 4), 1.0);
    EXPECT_EQ(eight.at(0, 0), 0.0);
    double total = 0.0;
    for (double v : eight.values) total += v;
    EXPECT_EQ(total, 4.0);
}

TEST(Rasterize, PixelCenterConvention) {
    const RasterImage img(4, 1.0);
    EXPECT_DOUBLE_EQ(img.x_of(0), -0.75);
    EXPECT_DOUBLE_EQ(img.x_of(3), 0.75);
    EXPECT_DOUBLE_EQ(img.y_of(0), 0.75);
    EXPECT_DOUBLE_EQ(img.y_of(3), -0.75);
}

TEST(Rasterize, OffCenterDiscLandsInRightQuadrant) {
    const Phantom p{{DiscPhantom{{0.5, 0.5}, 0.2, 2.0}}};
    const auto img = rasterize(p, 16, 1.0);
    // (0.5, 0.5) is near row 4, column 11.
    EXPECT_EQ(img.at(3, 11), 2.0);
    EXPECT_EQ(img.at(12, 4), 0.0);
}

TEST(RasterImage, BilinearSampleReproducesLinearField) {
    RasterImage img(8, 1.0);
    for (int i = 0; i < img.n; ++i) {
        for (int j = 0; j < img.n; ++j) img.at(i, j) = 2.0 * img.x_of(j) - img.y_of(i);
    }
    EXPECT_NEAR(img.sample({0.1, -0.3}), 0.2 + 0.3, 1e-14);
    EXPECT_NEAR(img.sample({-0.6, 0.55}), -1.2 - 0.55, 1e-14);
}

TEST(Phantom, Validation) {
    EXPECT_THROW(Phantom{}.validate(), Error);
    EXPECT_THROW((Phantom{{DiscPhantom{{0, 0}, 0.0, 1.0}}}.validate()), Error);
    const auto circle = AcquisitionCurve::unit_circle();
    EXPECT_NO_THROW(Phantom{{kDisc}}.validate(circle));
    EXPECT_THROW((Phantom{{DiscPhantom{{0.7, 0}, 0.3, 1.0}}}.validate(circle)), Error);
    EXPECT_THROW((Phantom{{DiscPhantom{{0.8, 0}, 0.3, 1.0}}}.validate(circle)), Error);
}

TEST(SampleSinogram, GridsAndValues) {
    const Arc arc(AcquisitionCurve::unit_circle(), 0.0, kPi / 2);
    const auto sino = sample_sinogram(Phantom{{kDisc}}, arc, 5, 11, 2.0);
    EXPECT_EQ(sino.n_a(), 5);
    EXPECT_EQ(sino.n_r(), 11);
    EXPECT_DOUBLE_EQ(sino.s_grid().front(), 0.0);
    EXPECT_DOUBLE_EQ(sino.s_grid().back(), kPi / 2);
    EXPECT_DOUBLE_EQ(sino.r_grid().back(), 2.0);
    for (int i = 0; i < sino.n_a(); ++i) {
        const Vec2 z = arc.curve().point(sino.s_grid()[static_cast<std::size_t>(i)]);
        for (int j = 0; j < sino.n_r(); ++j) {
            EXPECT_EQ(sino.at(i, j), circular_mean(kDisc, z, sino.r_grid()[static_cast<std::size_t>(j)]));
        }
    }
}

TEST(SampleSinogram, SupportOfDiscRow) {
    const Arc full = Arc::full(AcquisitionCurve::unit_circle());
    const auto sino = sample_sinogram(Phantom{{kDisc}}, full, 8, 401, 2.0);
    for (int i = 0; i < sino.n_a(); ++i) {
        for (int j = 0; j < sino.n_r(); ++j) {
            const double r = sino.r_grid()[static_cast<std::size_t>(j)];
            if (r < 0.7 || r > 1.3) { EXPECT_EQ(sino.at(i, j), 0.0) << r; }
            if (r > 0.71 && r < 1.29) { EXPECT_GT(sino.at(i, j), 0.0) << r; }
        }
    }
}

TEST(SampleSinogram, ZeroAmplitudeGivesZero) {
    const Arc full = Arc::full(AcquisitionCurve::unit_circle());
    const auto sino = sample_sinogram(Phantom{{DiscPhantom{{0, 0}, 0.3, 0.0}}}, full, 16, 32, 2.0);
    for (double v : sino.values()) EXPECT_EQ(v, 0.0);
}

TEST(SampleSinogram, IndependentOfThreadCount) {
    const Arc arc(AcquisitionCurve::polar(), 0.0, 4.0);
    const Phantom p{{kDisc, DiscPhantom{{0.2, 0.3}, 0.1, -1.0}}};
    EXPECT_EQ(sample_sinogram(p, arc, 33, 40, 2.3, 1).values(), sample_sinogram(p, arc, 33, 40, 2.3, 4).values());
}
