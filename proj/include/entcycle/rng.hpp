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

#include <cstdint>
#include <random>

namespace entcycle {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent stream for one trajectory; depends only on the two indices.
inline Rng trajectory_rng(std::uint64_t master_seed, std::uint64_t traj_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(mix64(master_seed)),
                      static_cast<std::uint32_t>(mix64(master_seed) >> 32),
                      static_cast<std::uint32_t>(mix64(traj_index ^ 0x5851f42d4c957f2dULL)),
                      static_cast<std::uint32_t>(mix64(traj_index ^ 0x5851f42d4c957f2dULL) >> 32)};
    return Rng(seq);
}

/// Uniform draw on [0, 1).
inline double uniform01(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

}  // namespace entcycle
