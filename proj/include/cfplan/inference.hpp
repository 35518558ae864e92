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
#include "cfplan/params.hpp"
#include "cfplan/tuner.hpp"

#include <stdexcept>
#include <vector>

namespace cfplan {

class EmptyDataset : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 8x8x8 occupancy histogram over the workspace, then centroid and extent.
struct SceneDescriptor {
  static constexpr int kBins = 8;
  static constexpr int kHistogramSize = kBins * kBins * kBins;
  static constexpr int kSize = kHistogramSize + 6;

  Eigen::Matrix<double, kSize, 1> values = Eigen::Matrix<double, kSize, 1>::Zero();

  auto histogram() { return values.head<kHistogramSize>(); }
  auto histogram() const { return values.head<kHistogramSize>(); }
  Vec3 centroid() const { return values.segment<3>(kHistogramSize); }
  Vec3 extent() const { return values.tail<3>(); }
};

/// Points outside the workspace count toward the nearest boundary cell.
SceneDescriptor featurize(const PointCloud& cloud, const WorkspaceBounds& workspace);

/// Inverse-distance weighted k-nearest-neighbour regression over dataset labels.
/// An exact descriptor match returns that sample's label.
ParamVector knn_predict(const SceneDescriptor& query, const std::vector<SceneDescriptor>& descriptors,
                        const std::vector<LabeledSample>& dataset, int k = 3);

/// Convenience overload that featurizes every dataset cloud.
ParamVector knn_predict(const SceneDescriptor& query, const std::vector<LabeledSample>& dataset,
                        const WorkspaceBounds& workspace, int k = 3);

}  // namespace cfplan
