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

#include "cfplan/svg.hpp"

#include "cfplan/io.hpp"

#include <array>
#include <fstream>

namespace cfplan {

namespace {

constexpr double kPanel = 300.0;
constexpr double kMargin = 20.0;

struct Projection {
  int u, v;
  const char* label;
};

}  // namespace

void write_plot_svg(std::ostream& out, const Scene& scene, const Trajectory& traj) {
  const std::array<Projection, 3> views{{{0, 1, "xy"}, {0, 2, "xz"}, {1, 2, "yz"}}};
  const Vec3 lo = scene.workspace.min;
  const double span = scene.workspace.extent().maxCoeff();
  const double scale = kPanel / span;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 3 * (kPanel + 2 * kMargin) << "\" height=\""
      << kPanel + 2 * kMargin + 20 << "\">\n";
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& view = views[i];
    const double ox = static_cast<double>(i) * (kPanel + 2 * kMargin) + kMargin;
    const double oy = kMargin + 20;
    auto px = [&](const Vec3& p) { return ox + (p[view.u] - lo[view.u]) * scale; };
    auto py = [&](const Vec3& p) { return oy + kPanel - (p[view.v] - lo[view.v]) * scale; };

    out << "<g>\n<text x=\"" << ox << "\" y=\"" << kMargin + 10 << "\" font-family=\"sans-serif\" font-size=\"14\">"
        << view.label << "</text>\n";
    const double top = oy + kPanel - scene.workspace.extent()[view.v] * scale;
    out << "<rect x=\"" << ox << "\" y=\"" << top << "\" width=\"" << scene.workspace.extent()[view.u] * scale
        << "\" height=\"" << scene.workspace.extent()[view.v] * scale
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const auto& o : scene.obstacles)
      out << "<circle cx=\"" << px(o.center) << "\" cy=\"" << py(o.center) << "\" r=\"" << o.radius * scale
          << "\" fill=\"#d88\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    if (!traj.samples.empty()) {
      out << "<polyline fill=\"none\" stroke=\"#2a2\" stroke-width=\"1.5\" points=\"";
      for (const auto& s : traj.samples) out << px(s.x) << ',' << py(s.x) << ' ';
      out << "\"/>\n";
    }
    out << "<circle cx=\"" << px(scene.start) << "\" cy=\"" << py(scene.start)
        << "\" r=\"4\" fill=\"#26c\"/>\n";
    out << "<circle cx=\"" << px(scene.goal) << "\" cy=\"" << py(scene.goal) << "\" r=\"4\" fill=\"#fc0\" "
        << "stroke=\"#000\"/>\n</g>\n";
  }
  out << "</svg>\n";
}

void write_plot_svg(const std::string& path, const Scene& scene, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_plot_svg(out, scene, traj);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cfplan
