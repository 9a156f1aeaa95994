#include "qhardy/detectors.hpp"
#include "qhardy/features.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qhardy;

namespace {

ScalarField step_image() {
    return ScalarField::from_function(64, 64, 1.0, [](double t1, double) { return t1 >= 32.0 ? 255.0 : 0.0; });
}

ScalarField blob(double h) {
    const int n = static_cast<int>(std::lround(64.0 / h));
    return ScalarField::from_function(n, n, h, [](double t1, double t2) {
        const double d1 = t1 - 31.7;
        const double d2 = t2 - 32.3;
        return 255.0 * std::exp(-(d1 * d1 + d2 * d2) / 128.0);
    });
}

struct Hardy4 {
    GradientMap q, mq, s, ms;
};

Hardy4 all_hardy(const ScalarField& img, double y1, double y2, const LiftOptions& lift = {}) {
    const HardyFrame f = hardy_lift(img, y1, y2, lift);
    const HardyDerivs d = hardy_lift_derivs(img, y1, y2, lift);
    const double eps = default_eps(f);
    return {qdla(f, eps), mqdla(f, d, eps), sdla(f, d, eps), msdla(f, eps)};
}

int argmax_col(const ScalarField& f, int row) {
    int best = 0;
    for (int c = 1; c < f.width(); ++c) {
        if (f.at(row, c) > f.at(row, best)) best = c;
    }
    return best;
}

std::set<int> argmax_set(const ScalarField& f) {
    const double peak = f.max_value();
    std::set<int> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.values()[i] >= peak * (1.0 - 1e-9)) out.insert(static_cast<int>(i));
    }
    return out;
}

}  // namespace

TEST(Detectors, ConstantImageGivesZeroMaps) {
    ScalarField img(32, 32);
    img += 100.0;
    const Hardy4 h = all_hardy(img, 0.3, 0.3);
    for (const GradientMap* g : {&h.q, &h.mq, &h.s, &h.ms}) {
        EXPECT_LT(g->magnitude.max_abs(), 1e-10);
    }
    EXPECT_EQ(sobel(img).magnitude.max_abs(), 0.0);
    EXPECT_LT(canny_gradient(img).magnitude.max_abs(), 1e-10);
}

TEST(Detectors, MagnitudeAndOrientationFromComponents) {
    const Hardy4 h = all_hardy(test::random_image(24, 24, 3), 0.8, 1.1);
    for (const GradientMap* g : {&h.q, &h.mq, &h.s, &h.ms}) {
        for (std::size_t i = 0; i < g->g1.size(); ++i) {
            const double a = g->g1.values()[i];
            const double b = g->g2.values()[i];
            EXPECT_NEAR(g->magnitude.values()[i], std::sqrt(a * a + b * b), 1e-12);
            EXPECT_DOUBLE_EQ(g->orientation.values()[i], std::atan2(b, a));
        }
    }
}

TEST(Detectors, StepEdgeRidgeWithinOnePixel) {
    const Hardy4 h = all_hardy(step_image(), 0.3, 0.3);
    for (const GradientMap* g : {&h.q, &h.mq, &h.s, &h.ms}) {
        for (int row : {8, 32, 55}) EXPECT_LE(std::abs(argmax_col(g->magnitude, row) - 32), 1);
    }
    const int ridge = argmax_col(h.q.magnitude, 32);
    EXPECT_NEAR(h.q.orientation.at(32, ridge), 0.0, 1e-9);
    const GradientMap s = sobel(step_image());
    EXPECT_LE(std::abs(argmax_col(s.g1, 32) - 32), 1);
    EXPECT_EQ(s.g2.max_abs(), 0.0);
}

TEST(Detectors, QdlaConvergesToDifferenceOfAttenuation) {
    double previous = 0.0;
    for (double h : {1.0, 0.5}) {
        const ScalarField img = blob(h);
        const HardyFrame f = hardy_lift(img, 2.0, 2.0, LiftOptions::untruncated());
        const GradientMap q = qdla(f, default_eps(f));
        const FeatureField ff = local_features(f);
        const int margin = static_cast<int>(4.0 / h);
        const double gap = std::max(interior_max_abs_diff(q.g1, diff_t1(ff.attenuation), margin),
                                    interior_max_abs_diff(q.g2, diff_t2(ff.attenuation), margin));
        if (h < 1.0) {
            EXPECT_GE(previous / gap, 1.5);
        }
        previous = gap;
    }
}

TEST(Detectors, SdlaMatchesScaleFiniteDifference) {
    const ScalarField img = test::smooth_image(32, 32);
    const double y1 = 1.3;
    const double y2 = 1.7;
    const double delta = 1e-4;
    const Hardy4 h = all_hardy(img, y1, y2);
    const auto a = [&](double s1, double s2) { return local_features(hardy_lift(img, s1, s2)).attenuation; };
    const ScalarField fd1 = (1.0 / (2.0 * delta)) * (a(y1 + delta, y2) - a(y1 - delta, y2));
    const ScalarField fd2 = (1.0 / (2.0 * delta)) * (a(y1, y2 + delta) - a(y1, y2 - delta));
    EXPECT_LT(test::max_abs_diff(h.s.g1, fd1), 1e-5);
    EXPECT_LT(test::max_abs_diff(h.s.g2, fd2), 1e-5);
}

TEST(Detectors, PhaseFormsMatchAttenuationFormsUnderRefinement) {
    double prev_q = 0.0;
    double prev_s = 0.0;
    for (double h : {1.0, 0.5}) {
        const Hardy4 d = all_hardy(blob(h), 2.0, 2.0, LiftOptions::untruncated());
        const int margin = static_cast<int>(4.0 / h);
        const double gq = std::max(interior_max_abs_diff(d.mq.g1, d.q.g1, margin),
                                   interior_max_abs_diff(d.mq.g2, d.q.g2, margin));
        const double gs = std::max(interior_max_abs_diff(d.ms.g1, d.s.g1, margin),
                                   interior_max_abs_diff(d.ms.g2, d.s.g2, margin));
        if (h == 1.0) {
            EXPECT_LT(gq, 5e-3);
            EXPECT_LT(gs, 5e-3);
        } else {
            EXPECT_LT(gq, prev_q);
            EXPECT_LT(gs, prev_s);
        }
        prev_q = gq;
        prev_s = gs;
    }
}

TEST(Detectors, SobelMatchesDirectConvolution) {
    const std::vector<double> px{3, 9, 1, 7, 4, 8, 2, 6, 5, 0, 1, 1, 9, 3, 7, 4, 6, 2, 8, 5, 0, 3, 7, 1, 9};
    const ScalarField img(5, 5, px);
    const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
    const GradientMap g = sobel(img);
    for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) {
            double sx = 0.0;
            double sy = 0.0;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    const double v = px[std::clamp(r + i - 1, 0, 4) * 5 + std::clamp(c + j - 1, 0, 4)];
                    sx += kx[i][j] * v;
                    sy += ky[i][j] * v;
                }
            }
            EXPECT_EQ(g.g1.at(r, c), sx) << r << "," << c;
            EXPECT_EQ(g.g2.at(r, c), sy) << r << "," << c;
        }
    }
    // Centre pixel by hand: rows (1 1 9 / 2 6 5 / 3 7 1) around (2, 2).
    EXPECT_EQ(g.g1.at(2, 2), (1 + 2 * 8 + 3) - (7 + 2 * 2 + 3 * 0 + 0));
}

TEST(Detectors, CannyRejectsBadSigma) {
    EXPECT_THROW(canny_gradient(ScalarField(8, 8), 0.0), std::domain_error);
    EXPECT_NO_THROW(canny_gradient(ScalarField(3, 3), 4.0));
}

TEST(Detectors, RotationEquivariance) {
    const ScalarField img = test::random_image(40, 40, 12, 5.0, 250.0);
    const ScalarField rot = img.rotated90();
    const Hardy4 a = all_hardy(img, 0.9, 0.9);
    const Hardy4 b = all_hardy(rot, 0.9, 0.9);
    const std::pair<const GradientMap*, const GradientMap*> pairs[] = {
        {&a.q, &b.q}, {&a.mq, &b.mq}, {&a.s, &b.s}, {&a.ms, &b.ms}};
    for (const auto& [x, y] : pairs) {
        const ScalarField expected = x->magnitude.rotated90();
        EXPECT_LT(test::max_abs_diff(y->magnitude, expected), 1e-9 * std::max(1.0, expected.max_abs()));
    }
    EXPECT_LT(test::max_abs_diff(sobel(rot).magnitude, sobel(img).magnitude.rotated90()), 1e-9);
}

TEST(Detectors, ArgmaxInvariantUnderContrastScaling) {
    for (const ScalarField& img : {step_image(), blob(1.0)}) {
        const Hardy4 base = all_hardy(img, 0.3, 0.3);
        const Hardy4 scaled = all_hardy(3.7 * img, 0.3, 0.3);
        EXPECT_EQ(argmax_set(base.q.magnitude), argmax_set(scaled.q.magnitude));
        EXPECT_EQ(argmax_set(base.mq.magnitude), argmax_set(scaled.mq.magnitude));
        EXPECT_EQ(argmax_set(base.s.magnitude), argmax_set(scaled.s.magnitude));
        EXPECT_EQ(argmax_set(base.ms.magnitude), argmax_set(scaled.ms.magnitude));
    }
}

TEST(Detectors, ContrastOffsetMovesTheRidgeAtMostTheKernelRadius) {
    // ln(A + c) is not offset invariant: on a dark but nonzero background the log-derivative
    // peaks where the truncated kernel first reaches the bright side, up to ceil(8 y) px away.
    ScalarField shifted = 2.0 * step_image();
    shifted += 20.0;
    const Hardy4 h = all_hardy(shifted, 0.3, 0.3);
    for (const GradientMap* g : {&h.q, &h.mq, &h.s, &h.ms}) {
        for (int idx : argmax_set(g->magnitude)) EXPECT_LE(std::abs(idx % 64 - 32), 3);
    }
}

TEST(Detectors, ComputeGradientDispatch) {
    const ScalarField img = step_image();
    DetectorConfig cfg;
    for (DetectorKind k : {DetectorKind::qdla, DetectorKind::mqdla, DetectorKind::sdla, DetectorKind::msdla}) {
        cfg.detector = k;
        EXPECT_TRUE(uses_hardy_frame(k));
        EXPECT_GT(compute_gradient(img, cfg).magnitude.max_value(), 0.0);
    }
    cfg.detector = DetectorKind::sobel;
    EXPECT_EQ(test::max_abs_diff(compute_gradient(img, cfg).magnitude, sobel(img).magnitude), 0.0);
    EXPECT_TRUE(needs_scale_derivs(DetectorKind::sdla));
    EXPECT_FALSE(needs_scale_derivs(DetectorKind::msdla));
}

TEST(Detectors, ParseNames) {
    EXPECT_EQ(parse_detector("MSDLA"), DetectorKind::msdla);
    EXPECT_EQ(parse_detector("canny"), DetectorKind::canny);
    EXPECT_EQ(to_string(DetectorKind::mqdla), "mqdla");
    EXPECT_THROW(parse_detector("prewitt"), std::invalid_argument);
}
