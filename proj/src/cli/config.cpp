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

#include "entcycle/cli/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <string_view>

namespace entcycle::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 18> kKeys{
    "scheme", "feedback",        "eta3",        "eta4",   "dt",      "t-max",        "n-traj",
    "seed",   "flip-period",     "t-activate",  "record-elements",   "out",          "threads",
    "hom-sampling", "record-stride", "phi3",   "phi4",    "dump-trajectories"};

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    return j[key].get<double>();
}

long long get_integer(const json& j, const char* key, long long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
    return j[key].get<long long>();
}

int get_int(const json& j, const char* key, int fallback) {
    const long long v = get_integer(j, key, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(std::string("config key '") + key + "' is out of range");
    }
    return static_cast<int>(v);
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
    return j[key].get<std::string>();
}

bool get_bool(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw ConfigError(std::string("config key '") + key + "' must be true or false");
    return j[key].get<bool>();
}

Scheme parse_scheme(const std::string& s) {
    if (s == "pd") return Scheme::Photodetection;
    if (s == "homodyne") return Scheme::Homodyne;
    throw ConfigError("scheme must be 'pd' or 'homodyne', got '" + s + "'");
}

FeedbackVariant parse_feedback(const std::string& s) {
    if (s == "none") return FeedbackVariant::None;
    if (s == "recycle") return FeedbackVariant::PdRecycle;
    if (s == "mw") return FeedbackVariant::HomMW;
    if (s == "mw-flips") return FeedbackVariant::HomMWFlips;
    throw ConfigError("feedback must be one of none, recycle, mw, mw-flips; got '" + s + "'");
}

HomodyneSampling parse_sampling(const std::string& s) {
    if (s == "gaussian") return HomodyneSampling::Gaussian;
    if (s == "exact") return HomodyneSampling::ExactPovm;
    throw ConfigError("hom-sampling must be 'gaussian' or 'exact', got '" + s + "'");
}

}  // namespace

RunOptions options_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
            throw ConfigError("unknown config key '" + item.key() + "'");
        }
    }
    if (!j.contains("scheme")) throw ConfigError("missing required setting 'scheme'");

    RunOptions o;
    SimConfig& s = o.sim;
    s.scheme = parse_scheme(get_string(j, "scheme", ""));
    s.policy.variant = parse_feedback(get_string(j, "feedback", "none"));
    s.policy.flip_period = get_int(j, "flip-period", s.policy.flip_period);
    s.policy.t_activate = get_number(j, "t-activate", s.policy.t_activate);
    s.setup.eta3 = get_number(j, "eta3", s.setup.eta3);
    s.setup.eta4 = get_number(j, "eta4", s.setup.eta4);
    s.setup.dt = get_number(j, "dt", s.setup.dt);
    s.setup.phi3 = get_number(j, "phi3", s.setup.phi3);
    s.setup.phi4 = get_number(j, "phi4", s.setup.phi4);
    s.t_max = get_number(j, "t-max", s.t_max);
    s.n_traj = get_int(j, "n-traj", s.n_traj);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
        s.master_seed = j["seed"].get<std::uint64_t>();
    }
    s.record_stride = get_int(j, "record-stride", s.record_stride);
    s.record_elements = get_bool(j, "record-elements", s.record_elements);
    s.threads = get_int(j, "threads", s.threads);
    s.sampling = parse_sampling(get_string(j, "hom-sampling", "gaussian"));
    o.out_dir = get_string(j, "out", o.out_dir);
    o.dump_trajectories = get_int(j, "dump-trajectories", o.dump_trajectories);
    if (o.dump_trajectories < 0) throw ConfigError("dump-trajectories must be non-negative");
    s.keep_trajectories = o.dump_trajectories;
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return o;
}

json options_to_json(const RunOptions& o) {
    const SimConfig& s = o.sim;
    json j;
    j["scheme"] = to_string(s.scheme);
    j["feedback"] = to_string(s.policy.variant);
    j["flip-period"] = s.policy.flip_period;
    j["t-activate"] = s.policy.t_activate;
    j["eta3"] = s.setup.eta3;
    j["eta4"] = s.setup.eta4;
    j["dt"] = s.setup.dt;
    j["phi3"] = s.setup.phi3;
    j["phi4"] = s.setup.phi4;
    j["t-max"] = s.t_max;
    j["n-traj"] = s.n_traj;
    j["seed"] = s.master_seed;
    j["record-stride"] = s.record_stride;
    j["record-elements"] = s.record_elements;
    j["threads"] = s.threads;
    j["hom-sampling"] = s.sampling == HomodyneSampling::Gaussian ? "gaussian" : "exact";
    j["out"] = o.out_dir;
    j["dump-trajectories"] = o.dump_trajectories;
    return j;
}

json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace entcycle::cli
