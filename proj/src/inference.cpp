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

#include "cfplan/inference.hpp"

#include <algorithm>
#include <numeric>

namespace cfplan {

SceneDescriptor featurize(const PointCloud& cloud, const WorkspaceBounds& workspace) {
  if (!workspace.valid()) throw InvalidArgument("featurize: invalid workspace");
  SceneDescriptor desc;
  if (cloud.empty()) return desc;

  constexpr int n = SceneDescriptor::kBins;
  const Vec3 extent = workspace.extent();
  Vec3 lo = cloud.points.front();
  Vec3 hi = lo;
  Vec3 sum = Vec3::Zero();
  auto hist = desc.histogram();
  for (const auto& p : cloud.points) {
    int cell[3];
    for (int k = 0; k < 3; ++k) {
      const double u = (p[k] - workspace.min[k]) / extent[k];
      cell[k] = std::clamp(static_cast<int>(std::floor(u * n)), 0, n - 1);
    }
    hist[(cell[0] * n + cell[1]) * n + cell[2]] += 1.0;
    sum += p;
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const auto count = static_cast<double>(cloud.size());
  hist /= count;
  desc.values.segment<3>(SceneDescriptor::kHistogramSize) = sum / count;
  desc.values.tail<3>() = hi - lo;
  return desc;
}

ParamVector knn_predict(const SceneDescriptor& query, const std::vector<SceneDescriptor>& descriptors,
                        const std::vector<LabeledSample>& dataset, int k) {
  if (dataset.empty()) throw EmptyDataset("knn_predict: dataset is empty");
  if (descriptors.size() != dataset.size()) throw InvalidArgument("knn_predict: descriptor count mismatch");
  if (k < 1) throw InvalidArgument("knn_predict: k must be >= 1");

  std::vector<double> dist(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) dist[i] = (descriptors[i].values - query.values).norm();

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  order.resize(std::min<std::size_t>(static_cast<std::size_t>(k), order.size()));

  if (dist[order.front()] == 0.0) return dataset[order.front()].p_star;

  const Eigen::VectorXd& first = dataset[order.front()].p_star.values();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(first.size());
  Eigen::VectorXd lo = first, hi = first;
  double total = 0.0;
  for (std::size_t i : order) {
    const Eigen::VectorXd& label = dataset[i].p_star.values();
    if (label.size() != acc.size()) throw InvalidArgument("knn_predict: label dimension mismatch");
    const double w = 1.0 / (dist[i] + 1e-9);
    acc += w * label;
    total += w;
    lo = lo.cwiseMin(label);
    hi = hi.cwiseMax(label);
  }
  // Rounding can push a convex combination one ulp past its extremes.
  return ParamVector(Eigen::VectorXd((acc / total).cwiseMax(lo).cwiseMin(hi)));
}

ParamVector knn_predict(const SceneDescriptor& query, const std::vector<LabeledSample>& dataset,
                        const WorkspaceBounds& workspace, int k) {
  std::vector<SceneDescriptor> descriptors;
  descriptors.reserve(dataset.size());
  for (const auto& s : dataset) descriptors.push_back(featurize(s.cloud, workspace));
  return knn_predict(query, descriptors, dataset, k);
}

}  // namespace cfplan
