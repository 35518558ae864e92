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

#include "cfplan/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cfplan {

namespace {

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

template <typename F>
auto schema(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string(what) + ": " + e.what());
  }
}

std::vector<double> parse_csv_row(const std::string& line, std::size_t expected, std::size_t line_no) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw IoError("csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
  }
  if (values.size() != expected)
    throw IoError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(expected) + " columns");
  return values;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw IoError("expected a 3-element array");
  return schema("vector", [&] { return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()); });
}

Json scene_to_json(const Scene& scene) {
  Json obstacles = Json::array();
  for (const auto& o : scene.obstacles) obstacles.push_back({{"center", to_json(o.center)}, {"radius", o.radius}});
  return {{"obstacles", obstacles},
          {"start", to_json(scene.start)},
          {"goal", to_json(scene.goal)},
          {"workspace", {{"min", to_json(scene.workspace.min)}, {"max", to_json(scene.workspace.max)}}}};
}

Scene scene_from_json(const Json& j) {
  Scene scene = schema("scene", [&] {
    Scene s;
    for (const auto& o : j.at("obstacles")) s.obstacles.push_back({vec3_from_json(o.at("center")), o.at("radius").get<double>()});
    s.start = vec3_from_json(j.at("start"));
    s.goal = vec3_from_json(j.at("goal"));
    s.workspace.min = vec3_from_json(j.at("workspace").at("min"));
    s.workspace.max = vec3_from_json(j.at("workspace").at("max"));
    return s;
  });
  scene.validate();
  return scene;
}

Scene read_scene(const std::string& path) { return scene_from_json(read_json(path)); }

void write_scene(const std::string& path, const Scene& scene) { write_json(path, scene_to_json(scene)); }

PointCloud read_cloud_csv(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != "x,y,z") throw IoError("cloud csv: missing 'x,y,z' header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto v = parse_csv_row(line, 3, line_no);
    cloud.points.emplace_back(v[0], v[1], v[2]);
    if (!cloud.points.back().allFinite()) throw IoError("cloud csv: non-finite coordinate");
  }
  return cloud;
}

PointCloud read_cloud_csv(const std::string& path) {
  auto in = open_in(path);
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out << "x,y,z\n" << std::setprecision(17);
  for (const auto& p : cloud.points) out << p.x() << ',' << p.y() << ',' << p.z() << '\n';
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
  auto out = open_out(path);
  write_cloud_csv(out, cloud);
  if (!out) throw IoError("write failed: " + path);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,y,z,clearance\n" << std::setprecision(17);
  for (const auto& s : traj.samples)
    out << s.t << ',' << s.x.x() << ',' << s.x.y() << ',' << s.x.z() << ',' << s.clearance << '\n';
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  write_trajectory_csv(out, traj);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<TrajectorySample> read_trajectory_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,x,y,z,clearance")
    throw IoError("trajectory csv: missing header");
  std::vector<TrajectorySample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto v = parse_csv_row(line, 5, line_no);
    samples.push_back({v[0], Vec3(v[1], v[2], v[3]), v[4]});
  }
  return samples;
}

Json plan_result_to_json(const PlanResult& r) {
  Json history = Json::array();
  for (const auto& [step, id] : r.best_agent_history) history.push_back({{"step", step}, {"agent", id}});
  const Vec3 last = r.trajectory.samples.empty() ? Vec3::Zero() : r.trajectory.final_position();
  return {{"reached", r.reached},
          {"steps_used", r.steps_used},
          {"min_clearance", r.min_clearance},
          {"final_position", to_json(last)},
          {"samples", r.trajectory.size()},
          {"best_agent_history", history}};
}

Json params_to_json(const ParamVector& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.values().size(); ++i) a.push_back(p.values()[i]);
  return a;
}

ParamVector params_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("params: expected a JSON array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  schema("params", [&] {
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return 0;
  });
  try {
    ParamVector p(v);
    p.validate();
    return p;
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("params: ") + e.what());
  }
}

ParamVector read_params(const std::string& path) { return params_from_json(read_json(path)); }

void write_depth_image(const std::string& pgm_path, const std::string& sidecar_path, const DepthImage& img) {
  img.validate();
  auto out = open_out(pgm_path, std::ios::out | std::ios::binary);
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  for (double d : img.depths) {
    const double mm = std::isfinite(d) && d > 0.0 ? std::min(std::round(d * 1000.0), 65535.0) : 0.0;
    const auto v = static_cast<std::uint16_t>(mm);
    const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(bytes, 2);
  }
  if (!out) throw IoError("write failed: " + pgm_path);

  Json rotation = Json::array();
  const Eigen::Matrix3d r = img.camera_to_base.rotation();
  for (int i = 0; i < 3; ++i) rotation.push_back({r(i, 0), r(i, 1), r(i, 2)});
  write_json(sidecar_path, {{"fx", img.fx},
                            {"fy", img.fy},
                            {"cx", img.cx},
                            {"cy", img.cy},
                            {"rotation", rotation},
                            {"translation", to_json(img.camera_to_base.translation())}});
}

DepthImage read_depth_image(const std::string& pgm_path, const std::string& sidecar_path) {
  DepthImage img;
  auto in = open_in(pgm_path, std::ios::in | std::ios::binary);
  std::string magic;
  int maxval = 0;
  in >> magic >> img.width >> img.height >> maxval;
  if (!in || magic != "P5" || maxval <= 255 || maxval > 65535) throw IoError("depth: expected 16-bit binary PGM");
  in.get();  // single whitespace before the raster
  const auto n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  std::vector<unsigned char> raw(2 * n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw IoError("depth: truncated raster");
  img.depths.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    img.depths[i] = static_cast<double>(raw[2 * i] | (raw[2 * i + 1] << 8)) / 1000.0;

  const Json side = read_json(sidecar_path);
  schema("depth sidecar", [&] {
    img.fx = side.at("fx").get<double>();
    img.fy = side.at("fy").get<double>();
    img.cx = side.at("cx").get<double>();
    img.cy = side.at("cy").get<double>();
    Eigen::Matrix3d r;
    const auto& rows = side.at("rotation");
    if (rows.size() != 3) throw IoError("depth sidecar: rotation must be 3x3");
    for (int i = 0; i < 3; ++i) r.row(i) = vec3_from_json(rows[static_cast<std::size_t>(i)]).transpose();
    img.camera_to_base = Eigen::Isometry3d::Identity();
    img.camera_to_base.linear() = r;
    img.camera_to_base.translation() = vec3_from_json(side.at("translation"));
    return 0;
  });
  try {
    img.validate();
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("depth: ") + e.what());
  }
  return img;
}

Json sample_to_json(const LabeledSample& s) {
  Json points = Json::array();
  for (const auto& p : s.cloud.points) points.push_back(to_json(p));
  return {{"scene_id", s.scene_id}, {"points", points}, {"p_star", params_to_json(s.p_star)}, {"best_cost", s.best_cost},
          {"reached", s.reached}};
}

LabeledSample sample_from_json(const Json& j) {
  return schema("dataset row", [&] {
    LabeledSample s;
    s.scene_id = j.at("scene_id").get<int>();
    for (const auto& p : j.at("points")) s.cloud.points.push_back(vec3_from_json(p));
    s.p_star = params_from_json(j.at("p_star"));
    s.best_cost = j.at("best_cost").get<double>();
    s.reached = j.at("reached").get<bool>();
    return s;
  });
}

std::vector<LabeledSample> read_dataset(const std::string& path) {
  auto in = open_in(path);
  std::vector<LabeledSample> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      rows.push_back(sample_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

Json summary_to_json(const DatasetSummary& s) {
  Json scenes = Json::array();
  for (const auto& o : s.scenes)
    scenes.push_back({{"scene_id", o.scene_id},
                      {"seed", o.seed},
                      {"success", o.success},
                      {"best_cost", o.best_cost},
                      {"wall_time_s", o.wall_time_s}});
  return {{"n_attempted", s.n_attempted},
          {"n_succeeded", s.n_succeeded},
          {"seeds", s.seeds},
          {"wall_time_s", s.wall_time_s},
          {"scenes", scenes}};
}

Json read_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cfplan
