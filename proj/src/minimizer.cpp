#include "sym3b/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "sym3b/analysis.hpp"

namespace sym3b {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;
constexpr double kStartAmplitude = 0.6;

double dot(const FourierLoop& u, const FourierLoop& v) {
  return u.a.cwiseProduct(v.a).sum() + u.b.cwiseProduct(v.b).sum();
}

FourierLoop resized(const FourierLoop& x, int order) {
  FourierLoop out = FourierLoop::zero(x.n, order);
  int keep = std::min(order, x.order) + 1;
  out.a.leftCols(keep) = x.a.leftCols(keep);
  out.b.leftCols(keep) = x.b.leftCols(keep);
  return out;
}

// Orthogonal projection of a coefficient-space gradient onto the feasible
// subspace: group average, then removal of the mass-weighted translation
// directions. The loop itself is re-centered by the uniform shift instead
// (project_equivariant); for the gradient that shift is oblique as soon as
// the masses differ, so the normal component m_i * v is removed here.
FourierLoop tangent_project(const SymmetryGroup& group, const std::vector<double>& masses,
                            const FourierLoop& g) {
  FourierLoop avg = FourierLoop::zero(g.n, g.order);
  for (const auto& e : group.elements) {
    FourierLoop moved = act_on_loop(e, g);
    avg.a += moved.a;
    avg.b += moved.b;
  }
  avg.a /= group.order();
  avg.b /= group.order();

  double s = 0.0;
  for (double m : masses) s += m * m;
  for (int col = 0; col <= avg.order; ++col) {
    Eigen::Vector3d wa = Eigen::Vector3d::Zero(), wb = Eigen::Vector3d::Zero();
    for (int i = 0; i < avg.n; ++i) {
      wa += masses[i] * avg.a.block<3, 1>(3 * i, col);
      wb += masses[i] * avg.b.block<3, 1>(3 * i, col);
    }
    for (int i = 0; i < avg.n; ++i) {
      avg.a.block<3, 1>(3 * i, col) -= masses[i] / s * wa;
      avg.b.block<3, 1>(3 * i, col) -= masses[i] / s * wb;
    }
  }
  avg.b.col(0).setZero();
  return avg;
}

struct RunOutcome {
  bool usable = false;
  bool collided = false;  // never cleared the guard at all
  FourierLoop x;
  double value = std::numeric_limits<double>::infinity();
  double grad_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  double min_distance = 0.0;
  std::vector<double> trace;
};

// Inverse of the per-harmonic metric diag(1 + k^2). The action's curvature
// grows like k^2 with the harmonic, so conjugate gradient in the plain
// coefficient inner product crawls; this scaling levels the spectrum. The
// weight is constant within each harmonic column, so it commutes with
// tangent_project and preconditioned tangent gradients stay tangent.
FourierLoop preconditioned(const FourierLoop& g) {
  FourierLoop m = g;
  for (int k = 0; k <= g.order; ++k) {
    double w = 1.0 / (1.0 + static_cast<double>(k) * k);
    m.a.col(k) *= w;
    m.b.col(k) *= w;
  }
  return m;
}

// Trial evaluation for the line search: nullopt when the trial collides or
// comes closer than the guard allows. Rejecting (rather than penalizing)
// keeps accepted values exactly the rectangle-rule action.
std::optional<ActionParts> guarded_probe(const ProblemSetup& setup, const FourierLoop& x,
                                         const MinimizeConfig& cfg) {
  try {
    ActionParts p = action_probe(setup, x, cfg.grid);
    if (p.min_distance < cfg.collision_guard) return std::nullopt;
    return p;
  } catch (const CollisionAtSample&) {
    return std::nullopt;
  }
}

RunOutcome run_descent(const ProblemSetup& setup, const SymmetryGroup& group,
                       const MinimizeConfig& cfg, const FourierLoop& start) {
  RunOutcome out;
  FourierLoop x = project_equivariant(group, resized(start, cfg.order));

  std::optional<ActionParts> probe = guarded_probe(setup, x, cfg);
  if (!probe) {
    out.collided = true;
    return out;
  }

  // One closed-form rescale before descending: x -> lambda x with
  // lambda^(alpha+2) = alpha*U / (2*K) minimizes the action along the ray.
  if (probe->kinetic > 1e-12 * std::max(1.0, probe->potential)) {
    double lambda = std::pow(setup.alpha * probe->potential / (2.0 * probe->kinetic),
                             1.0 / (setup.alpha + 2.0));
    if (std::isfinite(lambda) && lambda > 0.0) {
      FourierLoop y = x;
      y.a *= lambda;
      y.b *= lambda;
      if (auto scaled = guarded_probe(setup, y, cfg); scaled && scaled->value < probe->value) {
        x = std::move(y);
        probe = scaled;
      }
    }
  }

  ActionEval ev = action_and_gradient(setup, x, cfg.grid);
  FourierLoop g = tangent_project(group, setup.masses, ev.gradient);
  FourierLoop m = preconditioned(g);
  double f = ev.value;
  double gg = dot(g, g);
  double gm = dot(g, m);  // metric norm^2, positive until convergence

  out.usable = true;
  out.trace.push_back(f);

  FourierLoop d = m;
  d.a *= -1.0;
  d.b *= -1.0;
  double step = 1.0;

  while (out.iterations < cfg.max_iters) {
    if (std::sqrt(gg) <= cfg.grad_tol) {
      out.converged = true;
      break;
    }

    bool steepest = !(dot(g, d) < 0.0);
    if (steepest) {  // non-descent direction: fall back to steepest
      d = m;
      d.a *= -1.0;
      d.b *= -1.0;
    }
    double gd = steepest ? -gm : dot(g, d);

    // Armijo backtracking; guard rejections just halve like a failed decrease
    double alpha = 0.0;
    std::optional<ActionParts> accepted;
    FourierLoop trial;
    auto line_search = [&]() {
      alpha = std::min(2.0 * step, 1e8);
      for (int attempt = 0; attempt < kMaxHalvings; ++attempt, alpha *= 0.5) {
        trial = x;
        trial.a += alpha * d.a;
        trial.b += alpha * d.b;
        auto p = guarded_probe(setup, trial, cfg);
        if (p && p->value <= f + kArmijo * alpha * gd) {
          accepted = p;
          return;
        }
      }
    };
    line_search();
    if (!accepted && !steepest) {  // conjugate direction stuck: retry steepest once
      d = m;
      d.a *= -1.0;
      d.b *= -1.0;
      gd = -gm;
      steepest = true;
      line_search();
    }

    std::optional<ActionEval> floor_ev;  // gradient already computed by the floor phase
    FourierLoop floor_g;
    if (!accepted) {
      // Near the minimum the Armijo decrease c*alpha*|gd| drops below the
      // rounding granularity of f, so value comparisons alone cannot certify
      // progress; only the gradient stays measurable. Accept a step that
      // strictly shrinks the gradient while moving the value by at most a few
      // ulps (strict gg decrease rules out cycling, the slack bounds drift).
      double slack = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(f));
      double a2 = std::min(2.0 * step, 1e8);
      for (int attempt = 0; attempt < 24; ++attempt, a2 *= 0.5) {
        FourierLoop cand = x;
        cand.a += a2 * d.a;
        cand.b += a2 * d.b;
        cand = project_equivariant(group, cand);
        auto p = guarded_probe(setup, cand, cfg);
        if (!p) continue;
        ActionEval e2 = action_and_gradient(setup, cand, cfg.grid);
        if (!(e2.value <= f + slack)) continue;
        FourierLoop g2 = tangent_project(group, setup.masses, e2.gradient);
        if (dot(g2, g2) < gg) {
          trial = std::move(cand);
          accepted = p;
          alpha = a2;
          floor_ev = std::move(e2);
          floor_g = std::move(g2);
          break;
        }
      }
      if (!accepted) break;  // no measurable progress in any phase: stagnation
      x = std::move(trial);  // already projected
    } else {
      x = project_equivariant(group, trial);
    }

    probe = accepted;
    step = alpha * 2.0;

    if (!floor_ev) {
      ev = action_and_gradient(setup, x, cfg.grid);
    } else {
      ev = std::move(*floor_ev);
    }
    FourierLoop g_new = floor_ev ? std::move(floor_g)
                                 : tangent_project(group, setup.masses, ev.gradient);
    FourierLoop m_new = preconditioned(g_new);
    double gg_new = dot(g_new, g_new);
    double gm_new = dot(g_new, m_new);
    // Polak-Ribiere in the preconditioned metric, clipped at zero
    double beta = std::max(0.0, (gm_new - dot(g, m_new)) / gm);

    d.a = -m_new.a + beta * d.a;
    d.b = -m_new.b + beta * d.b;
    g = std::move(g_new);
    m = std::move(m_new);
    gg = gg_new;
    gm = gm_new;
    f = ev.value;

    ++out.iterations;
    out.trace.push_back(f);
  }

  if (std::sqrt(gg) <= cfg.grad_tol) out.converged = true;
  out.x = std::move(x);
  out.value = f;
  out.grad_norm = std::sqrt(gg);
  out.min_distance = probe->min_distance;
  return out;
}

void validate(const MinimizeConfig& cfg) {
  if (cfg.max_iters < 1) throw PreconditionViolated("max_iters must be positive");
  if (!(cfg.grad_tol > 0.0)) throw PreconditionViolated("grad_tol must be positive");
  if (cfg.starts < 1) throw PreconditionViolated("starts must be positive");
  if (!(cfg.collision_guard > 0.0)) throw PreconditionViolated("collision_guard must be positive");
  if (cfg.order < 1) throw PreconditionViolated("order must be positive");
  if (cfg.grid < 2 * cfg.order + 2) throw PreconditionViolated("grid too small for the order");
}

}  // namespace

MinimizeResult minimize(const ProblemSetup& setup, const SymmetryGroup& group_in,
                        const MinimizeConfig& config) {
  validate(config);
  if (group_in.n != setup.n()) throw DimensionMismatch("group and setup body counts differ");
  if (config.warm_start && config.warm_start->n != setup.n())
    throw DimensionMismatch("warm start body count differs from the setup");

  SymmetryGroup group = group_in;
  set_masses(group, setup.masses);

  if (is_bound_to_collisions(group))
    throw BoundToCollisions("every loop of this symmetry type passes through a collision");
  if (!config.allow_uncoercive && is_fully_uncoercive(group))
    throw FullyUncoercive("infimum escapes to infinity for this group; pass allow_uncoercive");

  double speed = setup.frame.speed();
  if (speed > 0.0) {
    Eigen::Vector3d unit = setup.frame.omega_vec / speed;
    bool on_axis = false;
    for (const auto& axis : rotation_axes(group))
      if ((unit - axis).norm() <= 1e-9 || (unit + axis).norm() <= 1e-9) {
        on_axis = true;
        break;
      }
    if (!on_axis)
      throw NotARotationAxis("frame vector is not along a rotation axis of the group");
  }

  const RunOutcome* best = nullptr;
  std::vector<RunOutcome> runs;
  runs.reserve(config.starts + 1);

  if (config.warm_start)
    runs.push_back(run_descent(setup, group, config, *config.warm_start));
  for (int s = 0; s < config.starts; ++s) {
    std::uint64_t seed = config.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(s);
    runs.push_back(
        run_descent(setup, group, config, random_equivariant_loop(group, config.order, seed,
                                                                  kStartAmplitude)));
  }

  for (const RunOutcome& run : runs)
    if (run.usable && (!best || run.value < best->value)) best = &run;
  if (!best)
    throw AllStartsCollided("every start began inside the collision guard");

  MinimizeResult res;
  res.loop = best->x;
  res.action = best->value;
  res.grad_norm = best->grad_norm;
  res.iterations = best->iterations;
  res.converged = best->converged;
  res.min_distance = best->min_distance;
  res.trace = best->trace;
  res.diagnostics = report(setup, group, best->x, config.grid);
  return res;
}

std::vector<SweepPoint> sweep_omega(const ProblemSetup& setup_template, const SymmetryGroup& group,
                                    const std::vector<double>& omega_grid,
                                    const MinimizeConfig& config,
                                    const std::function<void(const SweepPoint&)>& on_point) {
  std::vector<SweepPoint> out(omega_grid.size());
  for (size_t i = 0; i < omega_grid.size(); ++i) out[i].omega = omega_grid[i];
  if (omega_grid.empty()) return out;

  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  if (setup_template.frame.speed() > 0.0)
    axis = setup_template.frame.omega_vec / setup_template.frame.speed();

  std::mutex report_mtx;
  auto run_chunk = [&](size_t lo, size_t hi) {
    std::optional<FourierLoop> warm = config.warm_start;
    bool chained = false;
    for (size_t idx = lo; idx < hi; ++idx) {
      SweepPoint& row = out[idx];
      try {
        ProblemSetup setup(setup_template.masses, setup_template.alpha,
                           RotatingFrame(axis * omega_grid[idx]));
        setup.collision_eps = setup_template.collision_eps;

        MinimizeConfig cfg = config;
        cfg.seed = config.seed + static_cast<std::uint64_t>(idx);
        cfg.warm_start = warm;
        if (chained) cfg.starts = 1;  // previous loop carries the search, one cold retry

        MinimizeResult res = minimize(setup, group, cfg);
        warm = res.loop;
        chained = true;
        row.result = std::move(res);
      } catch (const Error& e) {
        row.error = e.what();
      }
      if (on_point) {
        std::lock_guard<std::mutex> lock(report_mtx);
        on_point(row);
      }
    }
  };

  int workers = 1;
  if (const char* env = std::getenv("SYM3B_WORKERS"))
    workers = std::clamp(std::atoi(env), 1, 64);
  workers = std::min(workers, static_cast<int>(omega_grid.size()));

  if (workers <= 1) {
    run_chunk(0, omega_grid.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (omega_grid.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      size_t lo = w * chunk, hi = std::min(omega_grid.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_chunk, lo, hi);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace sym3b
