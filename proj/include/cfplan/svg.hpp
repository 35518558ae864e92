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

#include <ostream>
#include <string>

namespace cfplan {

/// Three orthographic panels (xy, xz, yz) with obstacles, start, goal and the path.
void write_plot_svg(std::ostream& out, const Scene& scene, const Trajectory& traj);
void write_plot_svg(const std::string& path, const Scene& scene, const Trajectory& traj);

}  // namespace cfplan
