#include <gtest/gtest.h>

#include <cmath>

#include "limview/core.hpp"
#include "limview/sinogram.hpp"
#include "limview/window.hpp"

using namespace limview;

namespace {

const double kQuarter = kPi / 2;
const double kThreeQuarter = 1.5 * kPi;

std::vector<WindowSpec> windows() {
    std::vector<WindowSpec> out{WindowSpec::sharp(kQuarter)};
    for (int k = 1; k <= 3; ++k) {
        for (double eps : {0.05, 0.2, 1.0}) out.push_back(WindowSpec::rational(eps, k, kQuarter));
        for (double eps : {0.1, 0.25, 0.4}) out.push_back(WindowSpec::plateau(eps, k, kThreeQuarter));
    }
    return out;
}

}  // namespace

TEST(EvalWindow, RationalCenterIsOne) {
    EXPECT_NEAR(eval_window(WindowSpec::rational(0.2, 1, kQuarter), kQuarter / 2), 1.0, 1e-15);
}

TEST(EvalWindow, RationalVanishesAtEnds) {
    for (int k = 1; k <= 3; ++k) {
        const auto w = WindowSpec::rational(0.3, k, kQuarter);
        EXPECT_EQ(eval_window(w, 0.0), 0.0);
        EXPECT_EQ(eval_window(w, kQuarter), 0.0);
    }
}

TEST(EvalWindow, RationalClosedForm) {
    const double b = kQuarter, eps = 0.2, s = 0.3;
    const double h = s * (b - s) / (s * (b - s) + eps);
    const double hc = (b / 2) * (b / 2) / ((b / 2) * (b / 2) + eps);
    EXPECT_NEAR(eval_window(WindowSpec::rational(eps, 2, b), s), std::pow(h / hc, 2), 1e-15);
}

TEST(EvalWindow, PlateauInteriorIsOne) {
    EXPECT_EQ(eval_window(WindowSpec::plateau(0.25, 2, kThreeQuarter), 0.5 * kThreeQuarter), 1.0);
}

TEST(EvalWindow, PlateauTransitionClosedForm) {
    const double eps = 0.4, sigma = 0.1;
    const double h0 = sigma * (2 * eps - sigma) / (eps * eps);
    EXPECT_NEAR(eval_window(WindowSpec::plateau(eps, 2, kThreeQuarter), sigma * kThreeQuarter), h0 * h0, 1e-14);
}

TEST(EvalWindow, SharpIsOne) {
    EXPECT_EQ(eval_window(WindowSpec::sharp(2.0), 0.0), 1.0);
    EXPECT_EQ(eval_window(WindowSpec::sharp(2.0), 2.0), 1.0);
}

TEST(EvalWindow, OutOfRangeThrows) {
    const auto w = WindowSpec::rational(0.2, 1, kQuarter);
    try {
        eval_window(w, -0.01);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    }
    EXPECT_THROW(eval_window(w, kQuarter + 0.01), Error);
}

TEST(WindowSpec, ValidationRules) {
    EXPECT_THROW(WindowSpec::rational(0.0, 1, 1.0).validate(), Error);
    EXPECT_THROW(WindowSpec::plateau(0.5, 1, 1.0).validate(), Error);
    EXPECT_THROW(WindowSpec::plateau(0.0, 1, 1.0).validate(), Error);
    EXPECT_THROW(WindowSpec::rational(0.2, 0, 1.0).validate(), Error);
    EXPECT_THROW(WindowSpec::sharp(0.0).validate(), Error);
    EXPECT_NO_THROW(WindowSpec::plateau(0.49, 3, 1.0).validate());
    EXPECT_EQ(parse_window_kind("plateau"), WindowKind::Plateau);
    EXPECT_THROW(parse_window_kind("hann"), Error);
}

TEST(SampleWindow, SharpAllOnes) {
    const auto grid = uniform_grid(0.0, kQuarter, 17);
    for (double v : sample_window(WindowSpec::sharp(kQuarter), grid, 0.0)) EXPECT_EQ(v, 1.0);
}

TEST(SampleWindow, RationalEndpointsExactlyZero) {
    const auto grid = uniform_grid(1.0, 1.0 + kQuarter, 33);
    const auto w = sample_window(WindowSpec::rational(0.2, 1, kQuarter), grid, 1.0);
    EXPECT_EQ(w.front(), 0.0);
    EXPECT_EQ(w.back(), 0.0);
}

TEST(SampleWindow, PlateauMeetsOneAtEpsilon) {
    // Grid chosen so that one node sits at sigma = 0.25.
    const auto grid = uniform_grid(0.0, kThreeQuarter, 9);
    const auto w = sample_window(WindowSpec::plateau(0.25, 1, kThreeQuarter), grid, 0.0);
    EXPECT_NEAR(w[2], 1.0, 1e-15);
}

TEST(WindowProperty, BoundedAndSymmetric) {
    for (const auto& w : windows()) {
        for (int k = 0; k <= 10000; ++k) {
            const double s = w.b * k / 10000.0;
            const double v = eval_window(w, s);
            ASSERT_GE(v, 0.0) << w.label();
            ASSERT_LE(v, 1.0 + 1e-15) << w.label();
            ASSERT_NEAR(v, eval_window(w, w.b - s), 1e-12) << w.label() << " s=" << s;
        }
    }
}

TEST(WindowProperty, RationalDecreasesWithEpsilon) {
    for (double s : {0.05, 0.3, 0.6, 1.2}) {
        double prev = 2.0;
        for (double eps : {0.01, 0.05, 0.2, 1.0, 5.0}) {
            const double v = eval_window(WindowSpec::rational(eps, 1, kQuarter), s);
            EXPECT_LT(v, prev) << "s=" << s << " eps=" << eps;
            prev = v;
        }
    }
}

TEST(WindowProperty, PlateauExactlyOneOnPlateau) {
    for (double eps : {0.1, 0.25, 0.4}) {
        const auto w = WindowSpec::plateau(eps, 2, kThreeQuarter);
        for (int k = 0; k <= 1000; ++k) {
            const double s = (eps + (1 - 2 * eps) * k / 1000.0) * w.b;
            ASSERT_EQ(eval_window(w, std::min(s, (1 - eps) * w.b)), 1.0) << eps;
        }
    }
}

TEST(VanishingOrder, RecoversOrder) {
    for (int k = 1; k <= 3; ++k) {
        EXPECT_NEAR(verify_vanishing_order(WindowSpec::rational(0.2, k, kQuarter)), k, 0.05);
        EXPECT_NEAR(verify_vanishing_order(WindowSpec::plateau(0.25, k, kThreeQuarter)), k, 0.05);
    }
}

TEST(VanishingOrder, SharpRejected) { EXPECT_THROW(verify_vanishing_order(WindowSpec::sharp(1.0)), Error); }
