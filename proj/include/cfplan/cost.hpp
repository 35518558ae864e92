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

#include "cfplan/geometry.hpp"
#include "cfplan/planner.hpp"

namespace cfplan {

struct TrajectoryCostWeights {
  double w_cl = 0.01;
  double w_pl = 1.0;
  double w_sm = 100.0;
  double w_gd = 100.0;

  void validate() const;
};

/// The four unweighted terms of the executor trajectory cost.
struct TrajectoryCostTerms {
  double clearance = 0.0;    // mean inverse clearance over samples 1..T
  double path_length = 0.0;  // sum of segment lengths
  double smoothness = 0.0;   // scaled sum of squared second differences, t = 2..T-1
  double goal = 0.0;         // final distance to goal

  double weighted(const TrajectoryCostWeights& w) const {
    return w.w_cl * clearance + w.w_pl * path_length + w.w_sm * smoothness + w.w_gd * goal;
  }
};

TrajectoryCostTerms j_pmaf_terms(const Trajectory& traj, const Scene& scene, const Vec3& goal);

/// Weighted trajectory cost minimized by the tuner. Clearances are read from the
/// trajectory samples and clamped below at 1e-6 m.
double j_pmaf(const Trajectory& traj, const Scene& scene, const Vec3& goal, const TrajectoryCostWeights& w);

}  // namespace cfplan
