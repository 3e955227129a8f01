#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sym3b/baselines.hpp"
#include "sym3b/classification.hpp"
#include "sym3b/io.hpp"
#include "sym3b/minimizer.hpp"
#include "sym3b/variations.hpp"

using nlohmann::json;
using namespace sym3b;

namespace {

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "equal" or three comma-separated positive values; normalization happens in
// the library, so raw values pass through.
std::vector<double> parse_masses(const std::string& spec) {
  if (spec == "equal") return {1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw PreconditionViolated("masses: bad value '" + tok + "'");
    }
  }
  if (out.size() != 3)
    throw PreconditionViolated("masses: expected 'equal' or three comma-separated values");
  return out;
}

Eigen::Vector3d parse_axis(const std::string& name) {
  if (name == "e1") return Eigen::Vector3d::UnitX();
  if (name == "e2") return Eigen::Vector3d::UnitY();
  if (name == "e3") return Eigen::Vector3d::UnitZ();
  throw PreconditionViolated("axis must be one of e1, e2, e3");
}

// "a:b:count" (inclusive endpoints) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  try {
    if (spec.find(':') != std::string::npos) {
      std::stringstream ss(spec);
      std::string sa, sb, sc;
      if (!std::getline(ss, sa, ':') || !std::getline(ss, sb, ':') || !std::getline(ss, sc))
        throw std::invalid_argument(spec);
      double a = std::stod(sa), b = std::stod(sb);
      long count = std::stol(sc);
      if (count < 1) throw std::invalid_argument(spec);
      if (count == 1) {
        out.push_back(a);
      } else {
        for (long i = 0; i < count; ++i)
          out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
      }
    } else {
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    }
  } catch (const std::exception&) {
    throw PreconditionViolated("omega grid: expected a:b:count or a comma-separated list");
  }
  if (out.empty()) throw PreconditionViolated("omega grid is empty");
  return out;
}

SymmetryGroup load_group(const std::string& name, const std::string& file) {
  if (name.empty() == file.empty())
    throw PreconditionViolated("pass exactly one of --group / --group-file");
  if (!name.empty()) return catalog(name).group;
  std::ifstream in(file);
  if (!in) throw PreconditionViolated("cannot open group file " + file);
  return group_from_json(json::parse(in));
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ReductionMismatch*>(&e)) return 2;
  if (dynamic_cast<const AllStartsCollided*>(&e)) return 3;
  if (dynamic_cast<const NotARotationAxis*>(&e)) return 4;
  if (dynamic_cast<const BoundToCollisions*>(&e)) return 5;
  return 1;
}

void emit(const std::string& out_path, const json& doc) {
  std::string text = doc.dump(2);
  text += '\n';
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw PreconditionViolated("cannot open output file " + out_path);
  f << text;
}

std::string inertial_sibling(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return path.substr(0, path.size() - suffix.size()) + "-inertial" + suffix;
  return path + "-inertial";
}

struct CommonOpts {
  std::string group_name, group_file;
  std::string masses = "equal";
  double alpha = 1.0;
  std::string axis = "e3";
  int order = kDefaultOrder;
  int grid = kDefaultGrid;
  std::uint64_t seed = 1;
  int starts = 8;
  int max_iters = 5000;
  double grad_tol = 1e-8;
  double guard = 1e-6;
  bool allow_uncoercive = false;
  std::string convention = "internal";
  std::string out_path;

  // The "figure" relabeling runs the clock six times slower (period 12*pi),
  // so displayed speeds are one sixth of the internal ones.
  double display_factor() const { return convention == "figure" ? 1.0 / 6.0 : 1.0; }

  MinimizeConfig minimize_config() const {
    MinimizeConfig cfg;
    cfg.max_iters = max_iters;
    cfg.grad_tol = grad_tol;
    cfg.starts = starts;
    cfg.collision_guard = guard;
    cfg.seed = seed;
    cfg.order = order;
    cfg.grid = grid;
    cfg.allow_uncoercive = allow_uncoercive;
    return cfg;
  }

  json echo(const std::vector<double>& normalized) const {
    return {{"group", group_name.empty() ? group_file : group_name},
            {"masses", normalized},
            {"alpha", alpha},
            {"axis", axis},
            {"order", order},
            {"grid", grid},
            {"seed", seed},
            {"starts", starts},
            {"max_iters", max_iters},
            {"grad_tol", grad_tol},
            {"guard", guard},
            {"allow_uncoercive", allow_uncoercive},
            {"omega_convention", convention}};
  }
};

void add_group_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--group", o.group_name, "catalog name of the symmetry group");
  cmd->add_option("--group-file", o.group_file, "JSON file with group generators");
  cmd->add_option("--masses", o.masses, "'equal' or three comma-separated values");
  cmd->add_option("--alpha", o.alpha, "potential exponent");
}

void add_minimizer_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--axis", o.axis, "frame axis: e1, e2 or e3");
  cmd->add_option("-N,--order", o.order, "Fourier truncation order");
  cmd->add_option("-M,--grid", o.grid, "quadrature grid size");
  cmd->add_option("--seed", o.seed, "random start seed");
  cmd->add_option("--starts", o.starts, "number of random starts");
  cmd->add_option("--max-iters", o.max_iters, "iteration cap per start");
  cmd->add_option("--grad-tol", o.grad_tol, "gradient norm target");
  cmd->add_option("--guard", o.guard, "collision guard distance");
  cmd->add_flag("--allow-uncoercive", o.allow_uncoercive,
                "run even when the infimum escapes to infinity");
  cmd->add_option("--omega-convention", o.convention,
                  "'internal' (period 2*pi) or 'figure' (omega outputs shown x6)")
      ->check(CLI::IsMember({"internal", "figure"}));
  cmd->add_option("--out", o.out_path, "write the report here instead of stdout");
}

// Name lookup for a reduction survivor: match code and family against the
// published catalog.
json survivor_record(const std::string& code, const std::string& pair_label) {
  json row = {{"digit_code", code}, {"name", nullptr}};
  for (const std::string& name : catalog_names()) {
    const CatalogEntry& e = catalog(name);
    if (e.digit_code == code && e.sigma_pair == pair_label) {
      row["name"] = name;
      break;
    }
  }
  return row;
}

int cmd_classify(const std::string& sigma_pair, const std::string& show_axes,
                 const std::string& out_path) {
  if (!sigma_pair.empty() && !show_axes.empty())
    throw PreconditionViolated("--sigma-pair and --show-axes are mutually exclusive");

  json doc;
  doc["command"] = "classify";
  doc["timestamp"] = iso_timestamp();

  if (!sigma_pair.empty()) {
    const SigmaPair& pair = sigma_pair_by_label(sigma_pair);
    PairReduction red = reduce_sigma_pair(pair);
    json jr;
    jr["sigma_pair"] = red.sigma_label;
    if (!red.folded_into.empty()) jr["folded_into"] = red.folded_into;
    jr["collision_bound"] = red.collision_bound;
    json dedup = json::array(), merged = json::array();
    for (const auto& [from, to] : red.deduplicated)
      dedup.push_back({{"code", from}, {"kept", to}});
    for (const auto& [from, to] : red.frame_merged)
      merged.push_back({{"code", from}, {"kept", to}});
    jr["deduplicated"] = std::move(dedup);
    jr["frame_merged"] = std::move(merged);
    jr["uncoercive"] = red.uncoercive;
    json survivors = json::array();
    for (const std::string& code : red.survivors)
      survivors.push_back(survivor_record(code, red.sigma_label));
    jr["survivors"] = std::move(survivors);
    doc["reduction"] = std::move(jr);
    emit(out_path, doc);
    return 0;
  }

  if (!show_axes.empty()) {
    auto table = rotation_axes_table();
    auto it = table.find(show_axes);
    if (it == table.end()) throw UnknownName("no axes row for code " + show_axes);
    json axes = json::array();
    for (const auto& v : it->second) axes.push_back(axis_label(v));
    doc["digit_code"] = show_axes;
    doc["axes"] = std::move(axes);
    emit(out_path, doc);
    return 0;
  }

  // Default: recompute the whole reduction. reduce_to_representatives throws
  // ReductionMismatch (exit 2) if any step disagrees with the expected tables.
  std::vector<CatalogEntry> entries = reduce_to_representatives(enumerate_candidates());
  json records = json::array();
  for (const CatalogEntry& e : entries) records.push_back(entry_to_json(e));
  records.push_back(entry_to_json(catalog("vertical-isosceles")));
  doc["records"] = std::move(records);
  emit(out_path, doc);
  return 0;
}

int cmd_minimize(const CommonOpts& o, double omega, const std::string& csv_path) {
  SymmetryGroup group = load_group(o.group_name, o.group_file);
  set_masses(group, parse_masses(o.masses));
  ProblemSetup setup(*group.masses, o.alpha, RotatingFrame(parse_axis(o.axis) * omega));

  MinimizeResult res = minimize(setup, group, o.minimize_config());

  json doc;
  doc["command"] = "minimize";
  doc["timestamp"] = iso_timestamp();
  doc["config"] = o.echo(*group.masses);
  doc["config"]["omega"] = omega * o.display_factor();
  doc["result"] = result_to_json(res);
  emit(o.out_path, doc);

  if (!csv_path.empty()) {
    write_trajectory_csv(csv_path, setup, res.loop, o.grid, false);
    write_trajectory_csv(inertial_sibling(csv_path), setup, res.loop, o.grid, true);
  }
  return res.converged ? 0 : 1;
}

// Best rigid action over the admissible winding numbers, one line per shape
// and speed, for plotting against the sweep curve.
void append_baseline_rows(std::ostream& out, const SymmetryGroup& group,
                          const std::vector<double>& masses, double alpha,
                          const std::vector<double>& grid, double factor) {
  using ShapeName = std::pair<Shape, const char*>;
  for (const auto& [shape, name] :
       {ShapeName{Shape::lagrange, "lagrange"}, ShapeName{Shape::euler, "euler"}}) {
    std::set<int> ks = admissible_rotation_numbers(group, shape, -6, 6);
    if (ks.empty()) continue;
    for (double w : grid) {
      std::optional<double> best;
      int best_k = 0;
      for (int k : ks) {
        try {
          Baseline b = shape == Shape::lagrange ? lagrange_solution(masses, alpha, k, w)
                                                : euler_solution(masses, alpha, k, w);
          if (!best || b.action < *best) {
            best = b.action;
            best_k = k;
          }
        } catch (const Error&) {
          // k + w = 0, or the shape needs equal front masses: no rigid loop here
        }
      }
      if (!best) continue;
      json row = {{"omega", w * factor}, {"baseline", name}, {"k", best_k}, {"action", *best}};
      out << row.dump() << '\n';
    }
  }
  out.flush();
}

int cmd_sweep(const CommonOpts& o, const std::string& grid_spec) {
  std::vector<double> grid = parse_grid(grid_spec);
  SymmetryGroup group = load_group(o.group_name, o.group_file);
  set_masses(group, parse_masses(o.masses));
  // Unit speed in the template only fixes the axis direction; the grid values
  // set each point's actual speed.
  ProblemSetup tmpl(*group.masses, o.alpha, RotatingFrame(parse_axis(o.axis)));

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) throw PreconditionViolated("cannot open output file " + o.out_path);
    out = &file;
  }

  double factor = o.display_factor();
  json meta;
  meta["command"] = "sweep";
  meta["timestamp"] = iso_timestamp();
  meta["config"] = o.echo(*group.masses);
  json shown = json::array();
  for (double w : grid) shown.push_back(w * factor);
  meta["config"]["omega_grid"] = std::move(shown);
  *out << meta.dump() << '\n';
  out->flush();

  auto on_point = [&](const SweepPoint& p) {
    *out << sweep_point_to_json(p, p.omega * factor).dump() << '\n';
    out->flush();
  };
  std::vector<SweepPoint> rows = sweep_omega(tmpl, group, grid, o.minimize_config(), on_point);

  append_baseline_rows(*out, group, *group.masses, o.alpha, grid, factor);

  for (const SweepPoint& r : rows)
    if (!r.result || !r.result->converged) return 6;
  return 0;
}

int cmd_second_variation(const std::string& shape, const std::string& masses_spec, double alpha,
                         int k, double omega, const std::string& convention,
                         const std::string& out_path) {
  std::vector<double> masses = parse_masses(masses_spec);

  VariationReport rep;
  if (shape == "lagrange") {
    rep = lagrange_instability_test(masses, alpha, k, omega);
  } else {
    Baseline base = euler_solution(masses, alpha, k, omega);
    ProblemSetup setup(masses, alpha, RotatingFrame::about_z(omega));
    // Mass-orthogonal vertical direction: equal end bodies up, middle down.
    const auto& m = setup.masses;
    std::vector<double> v = {1.0, 1.0, -(m[0] + m[1]) / m[2]};
    rep = sine_variation_test(setup, base, v);
  }

  double factor = convention == "figure" ? 1.0 / 6.0 : 1.0;
  json doc;
  doc["command"] = "second-variation";
  doc["timestamp"] = iso_timestamp();
  doc["config"] = {{"shape", shape},       {"masses", ProblemSetup(masses, alpha, {}).masses},
                   {"alpha", alpha},       {"k", k},
                   {"omega", omega * factor}, {"omega_convention", convention}};
  doc["report"] = variation_to_json(rep);
  emit(out_path, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric three-body loops: classification, minimization, sweeps"};
  app.require_subcommand(1);

  auto* classify = app.add_subcommand(
      "classify", "reduce the candidate symmetry types and print the catalog");
  std::string sigma_pair, show_axes, classify_out;
  classify->add_option("--sigma-pair", sigma_pair,
                       "report the reduction of one permutation family, e.g. \"(1,2),(1,2)\"");
  classify->add_option("--show-axes", show_axes, "print rotation axes for one sign-matrix code");
  classify->add_option("--out", classify_out, "write the report here instead of stdout");

  auto* minimize_cmd =
      app.add_subcommand("minimize", "minimize the action over one equivariant loop space");
  CommonOpts mo;
  double omega = 0.0;
  std::string csv_path;
  add_group_options(minimize_cmd, mo);
  minimize_cmd->add_option("--omega", omega, "frame rotation speed");
  add_minimizer_options(minimize_cmd, mo);
  minimize_cmd->add_option("--csv", csv_path,
                           "trajectory CSV path; the inertial-frame twin lands next to it");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "minimize across a grid of frame speeds, JSONL output");
  CommonOpts so;
  std::string grid_spec;
  add_group_options(sweep_cmd, so);
  sweep_cmd->add_option("--omega-grid", grid_spec, "a:b:count (inclusive) or a comma list")
      ->required();
  add_minimizer_options(sweep_cmd, so);

  auto* var_cmd = app.add_subcommand("second-variation",
                                     "closed-form second variation tests at rigid baselines");
  std::string var_shape, var_masses = "equal", var_convention = "internal", var_out;
  double var_alpha = 1.0, var_omega = 0.0;
  int var_k = 1;
  var_cmd->add_option("--shape", var_shape, "lagrange or euler")
      ->required()
      ->check(CLI::IsMember({"lagrange", "euler"}));
  var_cmd->add_option("--masses", var_masses, "'equal' or three comma-separated values");
  var_cmd->add_option("--alpha", var_alpha, "potential exponent");
  var_cmd->add_option("--k", var_k, "winding number of the rigid loop");
  var_cmd->add_option("--omega", var_omega, "frame rotation speed");
  var_cmd->add_option("--omega-convention", var_convention, "'internal' or 'figure'")
      ->check(CLI::IsMember({"internal", "figure"}));
  var_cmd->add_option("--out", var_out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are exit 1, help is exit 0
  }

  try {
    if (app.got_subcommand(classify)) return cmd_classify(sigma_pair, show_axes, classify_out);
    if (app.got_subcommand(minimize_cmd)) return cmd_minimize(mo, omega, csv_path);
    if (app.got_subcommand(sweep_cmd)) return cmd_sweep(so, grid_spec);
    return cmd_second_variation(var_shape, var_masses, var_alpha, var_k, var_omega,
                                var_convention, var_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
