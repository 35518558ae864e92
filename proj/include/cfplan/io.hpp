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

// File formats.
//
//   scene       JSON {obstacles:[{center:[x,y,z],radius}], start, goal, workspace:{min,max}}
//   cloud       CSV with header `x,y,z`
//   trajectory  CSV with header `t,x,y,z,clearance`
//   depth       binary PGM (P5, maxval 65535) holding little-endian uint16 millimeters,
//               plus a JSON sidecar {fx, fy, cx, cy, rotation:[[3x3]], translation:[3]}
//   dataset     JSON lines {scene_id, points:[[x,y,z]...], p_star:[...], best_cost, reached}

#pragma once

#include "cfplan/geometry.hpp"
#include "cfplan/planner.hpp"
#include "cfplan/tuner.hpp"

#include "json.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfplan {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json to_json(const Vec3& v);
Vec3 vec3_from_json(const Json& j);

Json scene_to_json(const Scene& scene);
/// Parses and validates a scene; throws IoError on schema errors and InvalidArgument on invariant violations.
Scene scene_from_json(const Json& j);
Scene read_scene(const std::string& path);
void write_scene(const std::string& path, const Scene& scene);

PointCloud read_cloud_csv(std::istream& in);
PointCloud read_cloud_csv(const std::string& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const std::string& path, const PointCloud& cloud);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
std::vector<TrajectorySample> read_trajectory_csv(const std::string& path);

Json plan_result_to_json(const PlanResult& result);

Json params_to_json(const ParamVector& p);
ParamVector params_from_json(const Json& j);
ParamVector read_params(const std::string& path);

/// Depth in meters is rounded to whole millimeters; values beyond 65.535 m saturate.
void write_depth_image(const std::string& pgm_path, const std::string& sidecar_path, const DepthImage& img);
DepthImage read_depth_image(const std::string& pgm_path, const std::string& sidecar_path);

Json sample_to_json(const LabeledSample& s);
LabeledSample sample_from_json(const Json& j);
std::vector<LabeledSample> read_dataset(const std::string& path);

Json summary_to_json(const DatasetSummary& s);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace cfplan
