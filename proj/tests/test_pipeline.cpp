#include "qhardy/pipeline.hpp"
#include "qhardy_cli/app.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qhardy;

namespace {

ScalarField square_image() {
    return ScalarField::from_function(64, 64, 1.0, [](double t1, double t2) {
        return (t1 >= 16 && t1 < 48 && t2 >= 16 && t2 < 48) ? 255.0 : 0.0;
    });
}

// Chebyshev distance from (r, c) to the ring of square pixels on the boundary of [16, 48)^2.
int ring_distance(int r, int c) {
    int best = 1 << 20;
    for (int k = 16; k < 48; ++k) {
        for (auto [rr, cc] : {std::pair{16, k}, std::pair{47, k}, std::pair{k, 16}, std::pair{k, 47}}) {
            best = std::min(best, std::max(std::abs(r - rr), std::abs(c - cc)));
        }
    }
    return best;
}

}  // namespace

TEST(PipelineDefaults, Snapshot) {
    const PipelineConfig pc;
    EXPECT_EQ(pc.detector, DetectorKind::qdla);
    EXPECT_EQ(pc.y1, 0.3);
    EXPECT_EQ(pc.y2, 0.3);
    EXPECT_EQ(pc.nms_radius, 1.5);
    EXPECT_FALSE(pc.low.has_value());
    EXPECT_FALSE(pc.high.has_value());
    EXPECT_TRUE(pc.normalize);
    EXPECT_EQ(pc.canny_sigma, 1.0);
    EXPECT_EQ(pc.lift.truncation_factor, 8.0);
    EXPECT_TRUE(pc.lift.normalize);
    EXPECT_FALSE(pc.lift.full_support);

    const Thresholds ms = default_thresholds(DetectorKind::msdla);
    EXPECT_EQ(ms.low, 15.0);
    EXPECT_EQ(ms.high, 27.0);
    for (DetectorKind k : {DetectorKind::qdla, DetectorKind::mqdla, DetectorKind::sdla}) {
        EXPECT_EQ(default_thresholds(k).low, 3.8);
        EXPECT_EQ(default_thresholds(k).high, 5.5);
    }

    const cli::RunConfig rc = cli::default_run_config();
    EXPECT_EQ(rc.pipeline.detector, DetectorKind::qdla);
    EXPECT_EQ(rc.pipeline.y1, 0.3);
    EXPECT_EQ(rc.pipeline.y2, 0.3);
    EXPECT_EQ(rc.pipeline.nms_radius, 1.5);
    EXPECT_FALSE(rc.noise.has_value());
    EXPECT_EQ(rc.seed, 0u);
}

TEST(PipelineDefaults, ThresholdsFollowTheDetector) {
    PipelineConfig pc;
    const ScalarField mag(4, 4);
    Thresholds t = pc.thresholds_for(mag);
    EXPECT_EQ(t.low, 3.8);
    EXPECT_EQ(t.high, 5.5);
    pc.detector = DetectorKind::msdla;
    t = pc.thresholds_for(mag);
    EXPECT_EQ(t.low, 15.0);
    EXPECT_EQ(t.high, 27.0);
    pc.low = 1.0;
    t = pc.thresholds_for(mag);
    EXPECT_EQ(t.low, 1.0);
    EXPECT_EQ(t.high, 27.0);
}

TEST(PipelineDefaults, BaselineThresholdsAreAutomatic) {
    ScalarField mag(10, 10);
    for (int i = 0; i < 100; ++i) mag.values()[i] = i;
    PipelineConfig pc;
    pc.detector = DetectorKind::canny;
    const Thresholds c = pc.thresholds_for(mag);
    EXPECT_NEAR(c.high, 69.3, 0.8);
    EXPECT_NEAR(c.low, 0.4 * c.high, 1e-12);
    pc.detector = DetectorKind::sobel;
    double ss = 0.0;
    for (double v : mag.values()) ss += v * v;
    const Thresholds s = pc.thresholds_for(mag);
    EXPECT_NEAR(s.high, 2.0 * std::sqrt(ss / 100.0), 1e-9);
    EXPECT_EQ(s.low, s.high);
}

TEST(Pipeline, SquareGivesARingNearTheBoundary) {
    const PipelineResult res = run_pipeline(square_image(), PipelineConfig{});
    ASSERT_GT(res.edges.count(), 0u);
    for (int r = 0; r < 64; ++r) {
        for (int c = 0; c < 64; ++c) {
            if (res.edges.at(r, c)) {
                EXPECT_LE(ring_distance(r, c), 1) << r << "," << c;
            }
        }
    }
    // Every side is covered.
    for (int k = 17; k < 47; ++k) {
        const auto hit = [&](int r0, int c0) {
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (res.edges.at(r0 + dr, c0 + dc)) return true;
                }
            }
            return false;
        };
        EXPECT_TRUE(hit(16, k));
        EXPECT_TRUE(hit(47, k));
        EXPECT_TRUE(hit(k, 16));
        EXPECT_TRUE(hit(k, 47));
    }
}

TEST(Pipeline, ConstantImageGivesNoEdges) {
    ScalarField img(32, 32);
    img += 77.0;
    for (DetectorKind k : {DetectorKind::qdla, DetectorKind::mqdla, DetectorKind::sdla, DetectorKind::msdla,
                           DetectorKind::sobel, DetectorKind::canny}) {
        PipelineConfig pc;
        pc.detector = k;
        EXPECT_EQ(run_pipeline(img, pc).edges.count(), 0u) << to_string(k);
    }
}

TEST(Pipeline, ReportsStageTimings) {
    const PipelineResult res = run_pipeline(square_image(), PipelineConfig{});
    std::vector<std::string> names;
    for (const StageTiming& t : res.timings) {
        names.push_back(t.stage);
        EXPECT_GE(t.milliseconds, 0.0);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"lift", "detector", "nms", "hysteresis"}));
}

TEST(Pipeline, StageErrorsNameTheStage) {
    PipelineConfig pc;
    pc.nms_radius = 0.5;
    try {
        run_pipeline(square_image(), pc);
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), "config");
        EXPECT_EQ(std::string(e.what()).rfind("config: ", 0), 0u);
    }
    pc = PipelineConfig{};
    pc.low = 9.0;
    pc.high = 2.0;
    EXPECT_THROW(run_pipeline(square_image(), pc), StageError);
    pc = PipelineConfig{};
    try {
        run_pipeline(ScalarField(), pc);
        FAIL() << "expected StageError";
    } catch (const StageError& e) {
        EXPECT_FALSE(e.stage().empty());
    }
}

TEST(Pipeline, Deterministic) {
    const ScalarField img = test::random_image(48, 48, 6);
    for (DetectorKind k : {DetectorKind::mqdla, DetectorKind::canny}) {
        PipelineConfig pc;
        pc.detector = k;
        EXPECT_EQ(run_pipeline(img, pc).edges, run_pipeline(img, pc).edges);
    }
}

TEST(Pipeline, RawThresholdPath) {
    PipelineConfig pc;
    pc.normalize = false;
    const PipelineResult raw = run_pipeline(square_image(), pc);
    EXPECT_EQ(raw.edges.count(), 0u);  // raw log-derivative magnitudes sit far below 3.8
    pc.low = 0.1;
    pc.high = 0.3;
    EXPECT_GT(run_pipeline(square_image(), pc).edges.count(), 0u);
}
