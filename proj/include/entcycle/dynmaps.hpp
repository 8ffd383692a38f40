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

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace entcycle {

/// Real amplitudes on |ee> and |gg>.
struct AmpPair {
    double a = 1.0;
    double d = 0.0;
    AmpPair normalized() const;
    double concurrence() const;  // 2|a d|
};

/// Angle form (a, d) = (cos t, -sin t), t in [0, pi/2].
struct ThetaState {
    double theta = 0.0;
    AmpPair amplitudes() const;
    double concurrence() const;
};

// One step of the deterministic homodyne feedback dynamics, before and after
// renormalization. Both throw std::domain_error when |a - d| < 1e-12.
AmpPair mw_map_increment(const AmpPair& p, double eps);
AmpPair mw_map_step(const AmpPair& p, double eps);
AmpPair mw_flip_map_increment(const AmpPair& p, double eps);
AmpPair mw_flip_map_step(const AmpPair& p, double eps);

/// One-dimensional form of the flip map on the |ee> amplitude, taking
/// d = -sgn(a) sqrt(1 - a^2) with sgn(0) = +1.
double flip_a_map(double a, double eps);

/// Single-step concurrence map. branch_sign selects the larger (+1) or
/// smaller (-1) root for a^2 given C.
double concurrence_map(double c, double eps, int branch_sign);
/// Two steps with flips between them: C (1 - 2 eps) + 2 eps.
double concurrence_two_step_map(double c, double eps);

/// Right-hand sides of the angle equations without and with flips. The flip rate
/// is the two-branch average gamma (cos - sin) / (2 (cos + sin)).
double theta_rate(double theta, double gamma);
double theta_flip_rate(double theta, double gamma);
/// One RK4 step of size h.
double theta_ode_step(double theta, double h, double gamma);
double theta_flip_ode_step(double theta, double h, double gamma);

/// Angle at time t without flips: root of exp(-theta) cos(theta) = exp(-gamma t)
/// by bisection on [0, pi/2].
double theta_no_flip_solution(double t, double gamma);
/// Angle at time t with flips: cos(theta) - sin(theta) = exp(-gamma t / 2).
double theta_flip_solution(double t, double gamma);
/// Peak time of the no-flip concurrence, where theta reaches pi/4.
double peak_time(double gamma);

struct CurveTable {
    std::vector<double> t;
    std::vector<double> c_ideal_flip;  // 1 - exp(-gamma t)
    std::vector<double> c_mw_noflip;   // sin(2 theta) from the no-flip solution
    std::vector<double> c_flip_theta;  // sin(2 theta) from the flip solution
    std::vector<double> c_max_eta;     // 1 / ((1 - eta) exp(gamma t) + eta)
    std::vector<double> c_pd_nofb;     // 2 eta exp(-gamma t)(1 - exp(-gamma t))
    std::vector<double> c_hom_nofb;    // 2 (2 eta - 1) exp(-gamma t)(1 - exp(-gamma t)), floored at 0
};

/// Throws std::invalid_argument unless t_grid is increasing.
CurveTable analytic_curves(const std::vector<double>& t_grid, double gamma, double eta);

struct CobwebSeries {
    std::vector<std::pair<double, double>> steps;  // (x_k, x_{k+1})
    std::vector<double> curve_x;
    std::vector<double> curve_y;
};

using Map1D = std::function<double(double)>;

/// Iterates `map` n_iter times from x0 and samples it at curve_samples
/// uniform points on [lo, hi].
CobwebSeries cobweb(const Map1D& map, double x0, int n_iter, double lo, double hi, int curve_samples = 1000);

}  // namespace entcycle
