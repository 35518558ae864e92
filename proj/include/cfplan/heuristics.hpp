// Copyright 2026 The cfplan Authors
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

#include "cfplan/fields.hpp"
#include "cfplan/geometry.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>

namespace cfplan {

namespace heuristic {
struct Velocity {};
struct PathLength {};
struct GoalVector {};
struct ObstacleDistance {};
struct PathLengthObstacleDistance {};
struct Random {
  std::uint64_t stream_seed = 0;
};
struct Random2 {
  std::uint64_t stream_seed = 0;
};
}  // namespace heuristic

using CurrentHeuristic =
    std::variant<heuristic::Velocity, heuristic::PathLength, heuristic::GoalVector, heuristic::ObstacleDistance,
                 heuristic::PathLengthObstacleDistance, heuristic::Random, heuristic::Random2>;

using RngState = std::mt19937_64;

std::string heuristic_name(const CurrentHeuristic& h);

/// Seed of the random stream owned by a heuristic (0 for deterministic variants).
std::uint64_t stream_seed(const CurrentHeuristic& h);

/// SplitMix64 finalizer; mixes a master seed with a stream id.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

/// Heuristic assigned to agent `agent_id` (1-based): the five named variants,
/// then two independent random streams, repeating for larger teams.
CurrentHeuristic heuristic_for_agent(int agent_id, std::uint64_t master_seed);

/// Unit artificial current for `obs` as seen from `kin`.
///
/// `others` is the full obstacle set; `obs` itself is skipped when searching for
/// the nearest neighbour. Random variants draw from `rng`; the rest ignore it.
Vec3 compute_current(const CurrentHeuristic& h, const AgentKinematics<double>& kin, const Sphere& obs,
                     const Vec3& goal, std::span<const Sphere> others, RngState& rng);

}  // namespace cfplan
