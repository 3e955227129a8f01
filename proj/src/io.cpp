#include "sym3b/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sym3b/analysis.hpp"

namespace sym3b {

namespace {

using nlohmann::json;

json matrix3_to_json(const Eigen::Matrix3d& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  return rows;
}

Eigen::Matrix3d matrix3_from_json(const json& rows) {
  if (!rows.is_array() || rows.size() != 3)
    throw PreconditionViolated("space must be a 3x3 array");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != 3)
      throw PreconditionViolated("space must be a 3x3 array");
    for (int c = 0; c < 3; ++c) m(r, c) = row[c].get<double>();
  }
  return m;
}

}  // namespace

std::string axis_label(const Eigen::Vector3d& v) {
  static const char* names[3] = {"e1", "e2", "e3"};
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
    if ((v - e).norm() <= 1e-9 || (v + e).norm() <= 1e-9) return names[i];
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.6g,%.6g,%.6g)", v.x(), v.y(), v.z());
  return buf;
}

json group_to_json(const SymmetryGroup& group) {
  json out;
  out["n"] = group.n;
  if (group.masses) out["masses"] = *group.masses;
  json gens = json::array();
  for (const auto& g : group.generators) {
    json e;
    e["time"] = {{"shift", g.time.shift}, {"orientation", g.time.orientation}};
    e["space"] = matrix3_to_json(g.space);
    std::vector<int> image;
    for (int i : g.perm.image()) image.push_back(i + 1);
    e["perm"] = image;
    gens.push_back(std::move(e));
  }
  out["generators"] = std::move(gens);
  return out;
}

SymmetryGroup group_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("n") || !spec.contains("generators"))
    throw PreconditionViolated("group spec needs n and generators");
  int n = spec["n"].get<int>();
  if (n < 1) throw PreconditionViolated("group spec: n must be positive");

  std::vector<GroupElement> gens;
  for (const json& e : spec["generators"]) {
    if (!e.contains("time") || !e.contains("space") || !e.contains("perm"))
      throw PreconditionViolated("generator needs time, space and perm");

    const json& time = e["time"];
    int orientation = time.at("orientation").get<int>();
    if (orientation != 1 && orientation != -1)
      throw PreconditionViolated("time orientation must be +1 or -1");
    TimeTransform tt{TimeTransform::wrap(time.at("shift").get<double>()), orientation};

    Eigen::Matrix3d space = matrix3_from_json(e["space"]);
    if ((space * space.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-12)
      throw PreconditionViolated("space matrix is not orthogonal");

    std::vector<int> image = e["perm"].get<std::vector<int>>();
    if (static_cast<int>(image.size()) != n)
      throw PreconditionViolated("perm length must equal n");
    for (int& v : image) {
      if (v < 1 || v > n) throw PreconditionViolated("perm entries are 1-based body labels");
      --v;
    }
    gens.push_back({tt, space, Permutation(std::move(image))});
  }

  SymmetryGroup group = generate_group(n, gens);
  if (spec.contains("masses")) set_masses(group, spec["masses"].get<std::vector<double>>());
  return group;
}

json diagnostics_to_json(const DiagnosticsReport& report) {
  return {{"J_mean", {report.J_mean.x(), report.J_mean.y(), report.J_mean.z()}},
          {"J_max_deviation", report.J_max_deviation},
          {"J_in_Estar_residual", report.J_in_Estar_residual},
          {"planarity_ratio", report.planarity_ratio},
          {"min_pairwise_distance", report.min_pairwise_distance},
          {"el_residual_max", report.el_residual_max}};
}

json result_to_json(const MinimizeResult& result) {
  json loop;
  loop["n"] = result.loop.n;
  loop["order"] = result.loop.order;
  json a = json::array(), b = json::array();
  for (int r = 0; r < result.loop.a.rows(); ++r) {
    json ra = json::array(), rb = json::array();
    for (int c = 0; c < result.loop.a.cols(); ++c) {
      ra.push_back(result.loop.a(r, c));
      rb.push_back(result.loop.b(r, c));
    }
    a.push_back(std::move(ra));
    b.push_back(std::move(rb));
  }
  loop["a"] = std::move(a);
  loop["b"] = std::move(b);

  return {{"action", result.action},
          {"grad_norm", result.grad_norm},
          {"iterations", result.iterations},
          {"converged", result.converged},
          {"min_distance", result.min_distance},
          {"diagnostics", diagnostics_to_json(result.diagnostics)},
          {"loop", std::move(loop)}};
}

json variation_to_json(const VariationReport& report) {
  json out;
  out["second_derivative"] = report.second_derivative;
  out["closed_form"] = report.closed_form ? json(*report.closed_form) : json(nullptr);
  out["criterion_satisfied"] = report.criterion_satisfied;
  out["threshold"] = report.threshold ? json(*report.threshold) : json(nullptr);
  return out;
}

json entry_to_json(const CatalogEntry& entry) {
  json axes = json::array();
  for (const auto& v : entry.profile.rotation_axes) axes.push_back(axis_label(v));
  return {{"name", entry.name},
          {"digit_code", entry.digit_code},
          {"sigma_pair", entry.sigma_pair},
          {"order", entry.group.order()},
          {"axes", std::move(axes)},
          {"flags",
           {{"action_type", to_string(entry.profile.action_type)},
            {"core_order", entry.profile.core_order},
            {"type_R", entry.profile.type_R},
            {"fixed_config_dim", entry.profile.fixed_config_dim},
            {"bound_to_collisions", entry.profile.bound_to_collisions},
            {"fully_uncoercive", entry.profile.fully_uncoercive},
            {"homographic", entry.profile.homographic},
            {"vertical_isosceles", entry.profile.vertical_isosceles}}}};
}

json sweep_point_to_json(const SweepPoint& point, double omega_display) {
  if (!point.result) return {{"omega", omega_display}, {"error", point.error}};
  const MinimizeResult& r = *point.result;
  return {{"omega", omega_display},
          {"action", r.action},
          {"grad_norm", r.grad_norm},
          {"planarity_ratio", r.diagnostics.planarity_ratio},
          {"J_norm", r.diagnostics.J_mean.norm()},
          {"min_distance", r.min_distance},
          {"converged", r.converged}};
}

void write_trajectory_csv(const std::string& path, const ProblemSetup& setup,
                          const FourierLoop& x, int M, bool inertial) {
  SampledLoop samples = sample(x, M);
  std::ofstream out(path);
  if (!out) throw PreconditionViolated("cannot open " + path + " for writing");

  out << "t";
  for (int i = 1; i <= x.n; ++i) out << ",x" << i << ",y" << i << ",z" << i;
  out << "\n";

  double speed = setup.frame.speed();
  Eigen::Vector3d axis = speed > 0 ? Eigen::Vector3d(setup.frame.omega_vec / speed)
                                   : Eigen::Vector3d::UnitZ();
  char buf[32];
  for (int j = 0; j < M; ++j) {
    double t = kTwoPi * j / M;
    // Omega x = x cross omega_vec, so e^{t Omega} turns by -t*speed about the axis
    Eigen::Matrix3d frame = inertial && speed > 0
                                ? Eigen::AngleAxisd(-t * speed, axis).toRotationMatrix()
                                : Eigen::Matrix3d::Identity();
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    out << buf;
    for (int i = 0; i < x.n; ++i) {
      Eigen::Vector3d p = frame * samples.positions[j].col(i);
      for (int c = 0; c < 3; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", p(c));
        out << ',' << buf;
      }
    }
    out << "\n";
  }
}

TrajectorySamples read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolated("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw PreconditionViolated("empty trajectory file");
  int columns = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
  if (columns < 4 || (columns - 1) % 3 != 0)
    throw PreconditionViolated("trajectory header must be t,x1,y1,z1,...");
  int n = (columns - 1) / 3;

  TrajectorySamples out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (static_cast<int>(values.size()) != columns)
      throw PreconditionViolated("trajectory row width mismatch");
    out.t.push_back(values[0]);
    Eigen::Matrix3Xd pos(3, n);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 3; ++c) pos(c, i) = values[1 + 3 * i + c];
    out.positions.push_back(std::move(pos));
  }
  if (out.t.empty()) throw PreconditionViolated("trajectory file has no samples");
  return out;
}

FourierLoop loop_from_samples(const TrajectorySamples& samples, int order) {
  int M = static_cast<int>(samples.t.size());
  for (int j = 0; j < M; ++j)
    if (std::fabs(samples.t[j] - kTwoPi * j / M) > 1e-9)
      throw PreconditionViolated("samples do not sit on the uniform grid");
  return fit_loop(samples.positions, order);
}

}  // namespace sym3b
