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

#include <Eigen/Core>

namespace cfplan {

/// Planner parameters: five per-agent gain blocks followed by the shared detection radius.
///
/// Layout is block-by-gain: [k_p(1..n), k_v(1..n), k_cf(1..n), k_manip(1..n), k_r(1..n), r_d].
class ParamVector {
 public:
  enum Block { kPosition = 0, kVelocity = 1, kCircular = 2, kManip = 3, kRepulsive = 4 };
  static constexpr int kBlocks = 5;

  static int dimension(int n_agents) { return kBlocks * n_agents + 1; }

  explicit ParamVector(int n_agents = 7) : n_agents_(n_agents), values_(Eigen::VectorXd::Zero(dimension(n_agents))) {
    if (n_agents < 1) throw InvalidArgument("ParamVector: need at least one agent");
  }

  /// Wraps a raw vector; its length fixes the agent count.
  explicit ParamVector(Eigen::VectorXd values) : values_(std::move(values)) {
    const auto n = values_.size() - 1;
    if (n < kBlocks || n % kBlocks != 0) throw InvalidArgument("ParamVector: length must be 5*n_agents + 1");
    n_agents_ = static_cast<int>(n / kBlocks);
  }

  /// Every agent gets the same gains.
  static ParamVector uniform(int n_agents, const GainSet<double>& g, double r_d) {
    ParamVector p(n_agents);
    for (int a = 1; a <= n_agents; ++a) p.set_gains(a, g);
    p.r_d() = r_d;
    return p;
  }

  int n_agents() const { return n_agents_; }
  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }

  double& at(Block b, int agent_id) { return values_[index(b, agent_id)]; }
  double at(Block b, int agent_id) const { return values_[index(b, agent_id)]; }
  double& r_d() { return values_[values_.size() - 1]; }
  double r_d() const { return values_[values_.size() - 1]; }

  GainSet<double> gains(int agent_id) const {
    GainSet<double> g;
    g.k_p = at(kPosition, agent_id);
    g.k_v = at(kVelocity, agent_id);
    g.k_cf = at(kCircular, agent_id);
    g.k_manip = at(kManip, agent_id);
    g.k_r = at(kRepulsive, agent_id);
    return g;
  }

  void set_gains(int agent_id, const GainSet<double>& g) {
    at(kPosition, agent_id) = g.k_p;
    at(kVelocity, agent_id) = g.k_v;
    at(kCircular, agent_id) = g.k_cf;
    at(kManip, agent_id) = g.k_manip;
    at(kRepulsive, agent_id) = g.k_r;
  }

  /// Gains finite and non-negative, r_d finite and non-negative (zero disables the shell).
  void validate() const {
    if (!values_.allFinite()) throw InvalidArgument("ParamVector: values must be finite");
    if ((values_.head(values_.size() - 1).array() < 0.0).any())
      throw InvalidArgument("ParamVector: gains must be non-negative");
    if (r_d() < 0.0) throw InvalidArgument("ParamVector: r_d must be non-negative");
  }

 private:
  int index(Block b, int agent_id) const {
    if (agent_id < 1 || agent_id > n_agents_) throw InvalidArgument("ParamVector: agent id out of range");
    return static_cast<int>(b) * n_agents_ + (agent_id - 1);
  }

  int n_agents_ = 7;
  Eigen::VectorXd values_;
};

}  // namespace cfplan
