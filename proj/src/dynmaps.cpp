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

#include "entcycle/dynmaps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entcycle {

namespace {

constexpr double kSingularGap = 1e-12;
constexpr int kBisectionIters = 200;

double checked_gap(const AmpPair& p) {
    const double gap = p.a - p.d;
    if (std::abs(gap) < kSingularGap) throw std::domain_error("amplitude map singular at a = d");
    return gap;
}

template <class Rate>
double rk4(double theta, double h, double gamma, Rate rate) {
    const double k1 = rate(theta, gamma);
    const double k2 = rate(theta + 0.5 * h * k1, gamma);
    const double k3 = rate(theta + 0.5 * h * k2, gamma);
    const double k4 = rate(theta + h * k3, gamma);
    return theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

AmpPair AmpPair::normalized() const {
    const double n = std::hypot(a, d);
    if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero amplitude pair");
    return {a / n, d / n};
}

double AmpPair::concurrence() const { return std::min(1.0, 2.0 * std::abs(a * d)); }

AmpPair ThetaState::amplitudes() const { return {std::cos(theta), -std::sin(theta)}; }

double ThetaState::concurrence() const { return std::abs(std::sin(2.0 * theta)); }

AmpPair mw_map_increment(const AmpPair& p, double eps) {
    const double gap = checked_gap(p);
    return {p.a + eps * p.a * p.d / gap, p.d - eps * p.a * p.a / gap};
}

AmpPair mw_map_step(const AmpPair& p, double eps) { return mw_map_increment(p, eps).normalized(); }

AmpPair mw_flip_map_increment(const AmpPair& p, double eps) {
    const AmpPair s = mw_map_increment(p, eps);
    return {s.d, s.a};
}

AmpPair mw_flip_map_step(const AmpPair& p, double eps) { return mw_flip_map_increment(p, eps).normalized(); }

double flip_a_map(double a, double eps) {
    const double sgn = a >= 0.0 ? 1.0 : -1.0;
    const double d = -sgn * std::sqrt(std::max(0.0, 1.0 - a * a));
    return mw_flip_map_step({a, d}, eps).a;
}

double concurrence_map(double c, double eps, int branch_sign) {
    if (branch_sign != 1 && branch_sign != -1) throw std::invalid_argument("branch_sign must be +1 or -1");
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double a2 = 0.5 + 0.5 * branch_sign * root;
    return c * (1.0 - eps) + 2.0 * eps * a2;
}

double concurrence_two_step_map(double c, double eps) { return c * (1.0 - 2.0 * eps) + 2.0 * eps; }

double theta_rate(double theta, double gamma) {
    const double c = std::cos(theta);
    return gamma * c / (c + std::sin(theta));
}

double theta_flip_rate(double theta, double gamma) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // Average of the rising and falling branches. This half rate is the one whose
    // solution is cos - sin = exp(-gamma t / 2), i.e. C = 1 - exp(-gamma t).
    return 0.5 * gamma * (c - s) / (c + s);
}

double theta_ode_step(double theta, double h, double gamma) { return rk4(theta, h, gamma, theta_rate); }

double theta_flip_ode_step(double theta, double h, double gamma) { return rk4(theta, h, gamma, theta_flip_rate); }

double theta_no_flip_solution(double t, double gamma) {
    if (t < 0.0) throw std::invalid_argument("time must be non-negative");
    const double target = std::exp(-gamma * t);
    // exp(-theta) cos(theta) falls monotonically from 1 to 0 on [0, pi/2].
    double lo = 0.0;
    double hi = std::numbers::pi / 2.0;
    for (int i = 0; i < kBisectionIters && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::exp(-mid) * std::cos(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double theta_flip_solution(double t, double gamma) {
    if (t < 0.0) throw std::invalid_argument("time must be non-negative");
    // cos(theta) - sin(theta) = sqrt(2) cos(theta + pi/4).
    return std::acos(std::exp(-0.5 * gamma * t) / std::numbers::sqrt2) - std::numbers::pi / 4.0;
}

double peak_time(double gamma) { return (std::numbers::pi / 4.0 + 0.5 * std::numbers::ln2) / gamma; }

CurveTable analytic_curves(const std::vector<double>& t_grid, double gamma, double eta) {
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("time grid must be increasing");
    }
    CurveTable out;
    out.t = t_grid;
    for (double t : t_grid) {
        const double decay = std::exp(-gamma * t);
        out.c_ideal_flip.push_back(1.0 - decay);
        out.c_mw_noflip.push_back(std::sin(2.0 * theta_no_flip_solution(t, gamma)));
        out.c_flip_theta.push_back(std::sin(2.0 * theta_flip_solution(t, gamma)));
        out.c_max_eta.push_back(1.0 / ((1.0 - eta) / decay + eta));
        out.c_pd_nofb.push_back(2.0 * eta * decay * (1.0 - decay));
        out.c_hom_nofb.push_back(std::max(0.0, 2.0 * (2.0 * eta - 1.0) * decay * (1.0 - decay)));
    }
    return out;
}

CobwebSeries cobweb(const Map1D& map, double x0, int n_iter, double lo, double hi, int curve_samples) {
    if (n_iter < 0 || curve_samples < 2 || !(hi > lo)) throw std::invalid_argument("cobweb: bad arguments");
    CobwebSeries out;
    double x = x0;
    for (int k = 0; k < n_iter; ++k) {
        const double next = map(x);
        out.steps.emplace_back(x, next);
        x = next;
    }
    for (int i = 0; i < curve_samples; ++i) {
        const double xi = lo + (hi - lo) * i / (curve_samples - 1);
        out.curve_x.push_back(xi);
        out.curve_y.push_back(map(xi));
    }
    return out;
}

}  // namespace entcycle
