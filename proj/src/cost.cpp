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

#include "cfplan/cost.hpp"

#include <algorithm>

namespace cfplan {

void TrajectoryCostWeights::validate() const {
  if (w_cl < 0.0 || w_pl < 0.0 || w_sm < 0.0 || w_gd < 0.0)
    throw InvalidArgument("trajectory cost weights must be non-negative");
}

TrajectoryCostTerms j_pmaf_terms(const Trajectory& traj, const Scene& scene, const Vec3& goal) {
  if (traj.samples.empty()) throw InvalidArgument("j_pmaf: empty trajectory");
  const auto& s = traj.samples;
  const std::size_t last = s.size() - 1;  // T

  TrajectoryCostTerms terms;
  if (!scene.obstacles.empty() && last >= 1) {
    double sum = 0.0;
    for (std::size_t t = 1; t <= last; ++t) sum += 1.0 / std::max(s[t].clearance, 1e-6);
    terms.clearance = sum / static_cast<double>(last);
  }
  for (std::size_t t = 0; t < last; ++t) terms.path_length += (s[t + 1].x - s[t].x).norm();
  if (last >= 3) {
    double sum = 0.0;
    for (std::size_t t = 2; t <= last - 1; ++t) sum += (s[t + 1].x - 2.0 * s[t].x + s[t - 1].x).squaredNorm();
    terms.smoothness = sum / static_cast<double>(last - 1);
  }
  terms.goal = (s[last].x - goal).norm();
  return terms;
}

double j_pmaf(const Trajectory& traj, const Scene& scene, const Vec3& goal, const TrajectoryCostWeights& w) {
  return j_pmaf_terms(traj, scene, goal).weighted(w);
}

}  // namespace cfplan
