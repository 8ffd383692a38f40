// Copyright 2026 The entcycle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "entcycle/dynmaps.hpp"

namespace entcycle {
namespace {

const double kRoot2 = std::sqrt(2.0);

// Angle of the alternating two-cycle of the flip map, found independently
// from the cycle condition cos(2t)(cos t + sin t) = 2 eps sin t cos^2 t.
double cycle_angle(double eps) {
    auto f = [eps](double t) {
        const double c = std::cos(t), s = std::sin(t);
        return std::cos(2.0 * t) * (c + s) - 2.0 * eps * s * c * c;
    };
    double lo = 0.1, hi = std::numbers::pi / 4;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double integrate(double theta, double t, int steps, bool flips) {
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) theta = flips ? theta_flip_ode_step(theta, h, 1.0) : theta_ode_step(theta, h, 1.0);
    return theta;
}

TEST(MwMap, DoublyExcitedHasNoFirstOrderIncrement) {
    const double eps = 0.01;
    const AmpPair inc = mw_map_increment({1.0, 0.0}, eps);
    EXPECT_EQ(inc.a, 1.0);
    EXPECT_DOUBLE_EQ(inc.d, -eps);
    // Renormalizing moves a only at second order.
    const AmpPair p = mw_map_step({1.0, 0.0}, eps);
    EXPECT_NEAR(p.a, 1.0 / std::sqrt(1.0 + eps * eps), 1e-15);
    EXPECT_LT(1.0 - p.a, eps * eps);
}

TEST(MwMap, IncrementFromPhiMinus) {
    const AmpPair p = mw_map_increment({1.0 / kRoot2, -1.0 / kRoot2}, 0.1);
    const double want = 1.0 / kRoot2 + 0.1 * (-0.5) / (2.0 / kRoot2);
    EXPECT_NEAR(want, 0.67175, 5e-6);
    EXPECT_NEAR(p.a, want, 1e-15);
    EXPECT_THROW(mw_map_step({0.5, 0.5}, 0.1), std::domain_error);
}

TEST(MwMap, ConcurrenceIncrementMatchesRate) {
    // |a| > |d| branch: dC/dt = 1 - C + sqrt(1 - C^2) for gamma = 1.
    std::vector<double> err;
    for (double eps : {1e-2, 1e-3}) {
        double worst = 0.0;
        for (double a : {0.99, 0.9, 0.8}) {
            const AmpPair p{a, -std::sqrt(1.0 - a * a)};
            const double c = p.concurrence();
            const double dc = mw_map_step(p, eps).concurrence() - c;
            worst = std::max(worst, std::abs(dc - eps * (1.0 - c + std::sqrt(1.0 - c * c))));
        }
        err.push_back(worst);
    }
    EXPECT_LT(err[0], 10.0 * 1e-4);
    EXPECT_LT(err[1], err[0] / 50.0);
}

TEST(FlipMap, OneStepFromDoublyExcited) {
    const AmpPair p = mw_flip_map_increment({1.0, 0.0}, 0.1);
    EXPECT_DOUBLE_EQ(p.a, -0.1);
    EXPECT_DOUBLE_EQ(p.d, 1.0);
}

TEST(FlipMap, PhiMinusAlternatesSignAndStaysNear) {
    const double eps = 0.02;
    AmpPair p{1.0 / kRoot2, -1.0 / kRoot2};
    for (int k = 1; k <= 20; ++k) {
        p = mw_flip_map_step(p, eps);
        EXPECT_EQ(p.a < 0.0, k % 2 == 1);
        EXPECT_LT(std::abs(std::abs(p.a) - 1.0 / kRoot2), eps);
        EXPECT_GT(p.concurrence(), 1.0 - eps * eps);
    }
}

TEST(FlipMap, TwoStepConcurrence) {
    std::vector<double> err;
    for (double eps : {1e-2, 1e-3}) {
        double worst = 0.0;
        for (double a : {0.99, 0.9, 0.75}) {
            const AmpPair p{a, -std::sqrt(1.0 - a * a)};
            const double c = p.concurrence();
            const double two = mw_flip_map_step(mw_flip_map_step(p, eps), eps).concurrence();
            worst = std::max(worst, std::abs(two - (c * (1.0 - 2.0 * eps) + 2.0 * eps)));
        }
        err.push_back(worst);
    }
    EXPECT_LT(err[0], 10.0 * 1e-4);
    EXPECT_LT(err[1], err[0] / 50.0);
}

TEST(FlipMap, ConvergesToTwoCycle) {
    for (double eps : {0.1, 0.02}) {
        const double want = std::cos(cycle_angle(eps));
        double a = 1.0;
        // The angle settles like exp(-eps k / 2).
        for (int k = 0; k < 5000; ++k) a = flip_a_map(a, eps);
        EXPECT_NEAR(std::abs(a), want, 1e-10) << eps;
        EXPECT_NEAR(flip_a_map(a, eps), -a, 1e-10);
        // The cycle sits order eps away from 1/sqrt(2).
        EXPECT_LT(std::abs(want - 1.0 / kRoot2), eps / 4.0);
    }
}

TEST(FlipMap, ZeroAmplitudeTakesPositiveSign) {
    // a = 0 uses d = -1; one step then gives a' = d_inc / norm < 0.
    EXPECT_LT(flip_a_map(0.0, 0.1), 0.0);
}

TEST(ConcurrenceMap, Examples) {
    EXPECT_NEAR(concurrence_map(1.0, 0.1, 1), 1.0, 1e-15);
    EXPECT_NEAR(concurrence_map(1.0, 0.1, -1), 1.0, 1e-15);
    EXPECT_NEAR(concurrence_map(0.0, 0.1, 1), 0.2, 1e-15);
    const double want = 0.5 * 0.9 + 0.2 * (0.5 + 0.5 * std::sqrt(0.75));
    EXPECT_NEAR(want, 0.6366, 5e-5);
    EXPECT_NEAR(concurrence_map(0.5, 0.1, 1), want, 1e-15);
    EXPECT_THROW(concurrence_map(0.5, 0.1, 0), std::invalid_argument);
}

TEST(ConcurrenceMap, TwoStepHasStableFixedPointAtOne) {
    const double eps = 0.1;
    for (int i = 0; i < 100; ++i) {
        const double c = i / 100.0;
        EXPECT_GT(concurrence_two_step_map(c, eps), c);
    }
    EXPECT_NEAR(concurrence_two_step_map(1.0, eps), 1.0, 1e-15);
    const double h = 1e-6;
    const double slope = (concurrence_two_step_map(1.0, eps) - concurrence_two_step_map(1.0 - h, eps)) / h;
    EXPECT_LT(std::abs(slope), 1.0);
}

TEST(Cobweb, ConcurrenceIteratesRiseTowardOne) {
    const CobwebSeries s = cobweb([](double c) { return concurrence_two_step_map(c, 0.1); }, 0.0, 60, 0.0, 1.0);
    ASSERT_EQ(s.steps.size(), 60U);
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
        EXPECT_GT(s.steps[k].second, s.steps[k].first);
        if (k > 0) {
            EXPECT_EQ(s.steps[k].first, s.steps[k - 1].second);
        }
    }
    EXPECT_GT(s.steps.back().second, 1.0 - 1e-4);
    EXPECT_EQ(s.curve_x.size(), 1000U);
    EXPECT_EQ(s.curve_y.size(), 1000U);
}

TEST(Cobweb, AmplitudeMapChainsAndSettles) {
    const double eps = 0.02;
    const CobwebSeries s = cobweb([eps](double a) { return flip_a_map(a, eps); }, 1.0, 2000, -1.0, 1.0);
    for (std::size_t k = 1; k < s.steps.size(); ++k) EXPECT_EQ(s.steps[k].first, s.steps[k - 1].second);
    EXPECT_NEAR(std::abs(s.steps.back().second), std::cos(cycle_angle(eps)), 1e-6);
}

TEST(Cobweb, IdentityMapStaysPut) {
    const CobwebSeries s = cobweb([](double x) { return x; }, 0.3, 10, 0.0, 1.0, 5);
    for (const auto& [x, y] : s.steps) {
        EXPECT_EQ(x, 0.3);
        EXPECT_EQ(y, 0.3);
    }
    EXPECT_EQ(s.curve_x.size(), 5U);
}

TEST(ThetaOde, RatesAtSpecialAngles) {
    EXPECT_DOUBLE_EQ(theta_rate(0.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(theta_flip_rate(0.0, 1.0), 0.5);
    EXPECT_NEAR(theta_flip_rate(std::numbers::pi / 4, 1.0), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(theta_rate(0.0, 2.5), 2.5);
}

TEST(ThetaOde, NoFlipSolutionSatisfiesTranscendentalRelation) {
    for (double t : {0.2, 0.5, 1.0}) {
        const double th = integrate(0.0, t, 2000, false);
        EXPECT_NEAR(std::exp(-th) * std::cos(th), std::exp(-t), 1e-8);
        EXPECT_NEAR(th, theta_no_flip_solution(t, 1.0), 1e-8);
    }
}

TEST(ThetaOde, FlipSolutionMatchesClosedForm) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
        const double th = integrate(0.0, t, 4000, true);
        const double x = 1.0 - std::exp(-t);
        EXPECT_NEAR(std::cos(th) * std::cos(th), 0.5 + 0.5 * std::sqrt(1.0 - x * x), 1e-8);
        EXPECT_NEAR(th, theta_flip_solution(t, 1.0), 1e-8);
        EXPECT_NEAR(ThetaState{th}.concurrence(), x, 1e-8);
    }
}

TEST(ThetaOde, PeakTimeWhereAngleReachesQuarterTurn) {
    const double te = peak_time(1.0);
    EXPECT_NEAR(te, std::numbers::pi / 4 + std::log(kRoot2), 1e-15);
    EXPECT_NEAR(te, 1.1320, 1e-4);
    EXPECT_NEAR(theta_no_flip_solution(te, 1.0), std::numbers::pi / 4, 1e-10);
    EXPECT_NEAR(peak_time(2.0), te / 2.0, 1e-15);
}

TEST(ThetaState, AmplitudeConsistency) {
    for (double th : {0.0, 0.3, 1.2}) {
        const AmpPair p = ThetaState{th}.amplitudes();
        EXPECT_NEAR(p.a, std::cos(th), 1e-15);
        EXPECT_NEAR(p.d, -std::sin(th), 1e-15);
        EXPECT_NEAR(p.a * p.a + p.d * p.d, 1.0, 1e-12);
        EXPECT_NEAR(p.concurrence(), ThetaState{th}.concurrence(), 1e-15);
    }
}

TEST(MapOdeConsistency, FlipMapConvergesToOdeAtFirstOrder) {
    const double t = 1.0;
    const double want = ThetaState{theta_flip_solution(t, 1.0)}.concurrence();
    std::vector<double> err;
    for (double eps : {0.02, 0.01, 0.005}) {
        AmpPair p{1.0, 0.0};
        const int n = static_cast<int>(std::lround(t / eps));
        for (int k = 0; k < n; ++k) p = mw_flip_map_step(p, eps);
        err.push_back(std::abs(p.concurrence() - want));
    }
    for (int i = 0; i < 2; ++i) {
        EXPECT_GT(err[i] / err[i + 1], 1.6);
        EXPECT_LT(err[i] / err[i + 1], 2.4);
    }
}

TEST(AnalyticCurves, ReferenceValues) {
    const std::vector<double> t{0.0, std::log(2.0), 1.0, 3.0};
    const CurveTable c = analytic_curves(t, 1.0, 0.9);
    EXPECT_NEAR(c.c_ideal_flip[1], 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(c.c_max_eta[0], 1.0);
    EXPECT_NEAR(c.c_pd_nofb[1], 2.0 * 0.9 * 0.25, 1e-15);
    EXPECT_NEAR(c.c_hom_nofb[1], 2.0 * 0.8 * 0.25, 1e-15);
    EXPECT_NEAR(c.c_flip_theta[2], 1.0 - std::exp(-1.0), 1e-10);
    EXPECT_NEAR(c.c_max_eta[3], 1.0 / (0.1 * std::exp(3.0) + 0.9), 1e-15);
    const CurveTable low = analytic_curves(t, 1.0, 0.4);
    for (double v : low.c_hom_nofb) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(analytic_curves({0.0, 1.0, 0.5}, 1.0, 1.0), std::invalid_argument);
}

TEST(AnalyticCurves, NoFlipCurvePeaksAtPeakTime) {
    std::vector<double> t;
    for (int i = 0; i <= 300; ++i) t.push_back(i * 0.01);
    const CurveTable c = analytic_curves(t, 1.0, 1.0);
    const auto it = std::max_element(c.c_mw_noflip.begin(), c.c_mw_noflip.end());
    EXPECT_NEAR(t[it - c.c_mw_noflip.begin()], peak_time(1.0), 0.01);
    EXPECT_NEAR(*it, 1.0, 1e-3);
}

}  // namespace
}  // namespace entcycle
