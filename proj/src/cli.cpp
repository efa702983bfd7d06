#include "hmcf/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "hmcf/config.hpp"
#include "hmcf/errors.hpp"
#include "hmcf/evolution.hpp"
#include "hmcf/io.hpp"
#include "hmcf/profile.hpp"
#include "hmcf/se2.hpp"
#include "hmcf/validation.hpp"

namespace hmcf {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
  double beta = 0, a = 0, eps = 0, dt = 0, t_end = 0, support = 0;
  std::string kernel;
  int grid = 0;
  std::map<std::string, CLI::Option*> opt;
};

struct Context {
  Config cfg;
  fs::path out_dir;
  std::ostream& out;
  std::ostream& err;
};

void add_common(CLI::App* sub, CommonArgs& c, const std::string& name) {
  c.out = "hmcf_out/" + name;
  sub->add_option("--config", c.config, "Config file (key = value lines)");
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--set", c.sets, "Override a config key: key=value")->take_all();
  c.opt["beta"] = sub->add_option("--beta", c.beta, "Inverse temperature");
  c.opt["forcing_a"] = sub->add_option("--a", c.a, "Forcing a in m = tanh(beta (m + a))");
  c.opt["eps"] = sub->add_option("--eps", c.eps, "Interface scale");
  c.opt["dt"] = sub->add_option("--dt", c.dt, "Time step");
  c.opt["t_end"] = sub->add_option("--t-end", c.t_end, "Final time");
  c.opt["kernel.kind"] = sub->add_option("--kernel", c.kernel, "analytic or heat");
  c.opt["kernel.support"] = sub->add_option("--support", c.support, "Analytic kernel support radius");
  c.opt["grid"] = sub->add_option("--grid", c.grid, "Nodes per axis");
}

Config resolve(const CommonArgs& c) {
  Config cfg;
  if (!c.config.empty()) cfg.load_file(c.config);
  for (const auto& s : c.sets) cfg.apply_assignment(s);
  auto flag = [&](const char* key, double v) {
    if (c.opt.at(key)->count()) cfg.set(key, format_double(v));
  };
  flag("beta", c.beta);
  flag("forcing_a", c.a);
  flag("eps", c.eps);
  flag("dt", c.dt);
  flag("t_end", c.t_end);
  flag("kernel.support", c.support);
  if (c.opt.at("kernel.kind")->count()) cfg.set("kernel.kind", c.kernel);
  if (c.opt.at("grid")->count())
    for (const char* k : {"grid.n1", "grid.n2", "grid.n3"}) cfg.set(k, std::to_string(c.grid));
  return cfg;
}

std::string stamp(int idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", idx);
  return buf;
}

CsvTable curve_table(const LevelCurve& c) {
  CsvTable t;
  t.columns = c.plane == SlicePlane::X2Zero ? std::vector<std::string>{"x1", "x3"} : std::vector<std::string>{"x1", "x2"};
  for (const auto& p : c.points) t.add_row({p[0], p[1]});
  return t;
}

InstantonProfile profile_for(const Config& cfg) {
  return engine_profile(cfg.kernel(), cfg.num("beta"), cfg.num("profile.h"));
}

// Snapshot list from the config rounded onto the dt lattice; defaults to
// {0, t_end}.
std::vector<double> snapshot_times(const Config& cfg, const EvolutionParams& p) {
  auto ts = cfg.list("snapshots");
  if (ts.empty()) ts = {0.0, p.t_end};
  std::vector<double> out;
  for (double t : ts) {
    const double k = std::round(t / p.dt);
    require(std::abs(t / p.dt - k) < 1e-6 * std::max(1.0, k), ErrorCode::Config,
            "snapshot " + format_double(t) + " is not a multiple of dt");
    out.push_back(k * p.dt);
  }
  return out;
}

int cmd_equilibria(Context& cx) {
  const double beta = cx.cfg.num("beta"), a = cx.cfg.num("forcing_a");
  const auto e = equilibria(beta, a);
  CsvTable t;
  t.columns = {"beta", "a", "m_minus", "m_zero", "m_plus", "triple", "a_threshold"};
  t.add_row({beta, a, e.m_minus, e.m_zero, e.m_plus, e.triple ? 1.0 : 0.0, triple_root_threshold(beta)});
  cx.out << to_csv(t);
  write_csv(cx.out_dir / "equilibria.csv", t);
  return 0;
}

int cmd_instanton(Context& cx) {
  const auto p = profile_for(cx.cfg);
  const auto dm = profile_derivative(p);
  CsvTable t;
  t.columns = {"r", "m", "dm_dr"};
  for (int i = 0; i < p.grid.n; ++i) t.add_row({p.grid.r(i), p.values[i], dm[i]});
  write_csv(cx.out_dir / "instanton.csv", t);
  CsvTable s;
  s.columns = {"beta", "m_beta", "residual", "iterations", "h", "r_max"};
  s.add_row({p.beta, p.m_beta, p.residual, double(p.iterations), p.grid.h(), p.grid.r_max});
  cx.out << to_csv(s);
  write_csv(cx.out_dir / "instanton_summary.csv", s);
  return 0;
}

int cmd_theta(Context& cx) {
  const auto J = cx.cfg.kernel();
  const auto p = profile_for(cx.cfg);
  const auto mo = compute_theta(J, p);
  const double lambda = cx.cfg.num("dt") / (cx.cfg.num("eps") * cx.cfg.num("eps"));
  CsvTable t;
  t.columns = {"beta", "theta", "N", "h", "r_max", "lambda", "theta_scheme"};
  t.add_row({p.beta, mo.theta, mo.N, mo.h, mo.r_max, lambda, mo.theta / (1.0 + lambda)});
  cx.out << to_csv(t);
  write_csv(cx.out_dir / "theta.csv", t);
  return 0;
}

CsvTable diagnostics_table(const std::vector<StepDiagnostics>& ds) {
  CsvTable t;
  t.columns = {"t", "min", "max", "radius_x1", "x3_top", "x3_bottom"};
  for (const auto& d : ds) t.add_row({d.t, d.min, d.max, d.radius_x1, d.x3_top, d.x3_bottom});
  return t;
}

int cmd_evolve(Context& cx) {
  const auto p = cx.cfg.evolution();
  const auto grid = cx.cfg.grid();
  const auto prof = profile_for(cx.cfg);
  const auto m0 = init_levelset_field(cx.cfg.shape(), p.eps, prof, grid);
  const auto snaps = snapshot_times(cx.cfg, p);
  const double df = cx.cfg.num("delta_force");
  Trajectory tr;
  if (df > 0.0) {
    const auto br = forcing_bracket(m0, p, df, snaps);
    CsvTable b;
    b.columns = {"t", "x3_top_lower", "x3_top_center", "x3_top_upper", "radius_lower", "radius_center",
                 "radius_upper"};
    for (std::size_t i = 0; i < br.center.diagnostics.size(); ++i) {
      const auto &l = br.lower.diagnostics[i], &c = br.center.diagnostics[i], &u = br.upper.diagnostics[i];
      b.add_row({c.t, l.x3_top, c.x3_top, u.x3_top, l.radius_x1, c.radius_x1, u.radius_x1});
    }
    write_csv(cx.out_dir / "bracket.csv", b);
    cx.out << "bracket min_gap " << format_double(br.min_gap) << "\n";
    tr = br.center;
  } else {
    tr = evolve(m0, p, snaps, [&](int k, double t, const ScalarField&) {
      if (k % 20 == 0) cx.err << "step " << k << " t " << t << "\n";
    });
  }
  write_csv(cx.out_dir / "diagnostics.csv", diagnostics_table(tr.diagnostics));
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    write_field(cx.out_dir / ("field_" + stamp(int(i)) + ".txt"), tr.snapshots[i]);
    try {
      write_csv(cx.out_dir / ("levelset_" + stamp(int(i)) + ".csv"),
                curve_table(extract_zero_levelset(tr.snapshots[i], SlicePlane::X2Zero)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoZeroSet) throw;
    }
  }
  cx.out << to_csv(diagnostics_table({tr.diagnostics.back()}));
  return 0;
}

CylinderParams cylinder_params(const Config& cfg) {
  CylinderParams cp;
  cp.evolution = cfg.evolution();
  cp.evolution.t_end = cfg.num("calibrate.t_end");
  cp.radius = cfg.num("calibrate.radius");
  cp.half_width = cfg.num("calibrate.box");
  cp.n = cfg.integer("calibrate.n");
  cp.n3 = cfg.integer("calibrate.n3");
  return cp;
}

CylinderFit run_calibration(Context& cx, const InstantonProfile& prof) {
  const auto fit = calibrate_theta_cylinder(cylinder_params(cx.cfg), prof);
  CsvTable r;
  r.columns = {"t", "radius", "radius_sq"};
  for (std::size_t i = 0; i < fit.times.size(); ++i)
    r.add_row({fit.times[i], fit.radius[i], fit.radius[i] * fit.radius[i]});
  write_csv(cx.out_dir / "cylinder_radius.csv", r);
  CsvTable s;
  s.columns = {"theta", "slope", "intercept", "r_squared", "samples"};
  s.add_row({fit.theta, fit.fit.slope, fit.fit.intercept, fit.fit.r_squared, double(fit.fit.t.size())});
  write_csv(cx.out_dir / "calibration.csv", s);
  return fit;
}

int cmd_calibrate(Context& cx) {
  const auto fit = run_calibration(cx, profile_for(cx.cfg));
  CsvTable s;
  s.columns = {"theta", "r_squared", "samples"};
  s.add_row({fit.theta, fit.fit.r_squared, double(fit.fit.t.size())});
  cx.out << to_csv(s);
  return 0;
}

int cmd_validate_ball(Context& cx) {
  const auto prof = profile_for(cx.cfg);
  BallParams bp;
  bp.evolution = cx.cfg.evolution();
  bp.radius = cx.cfg.num("shape.radius");
  const auto box = cx.cfg.list("grid.box");
  require(box.size() == 3, ErrorCode::Config, "grid.box needs three half widths");
  bp.half_width = {box[0], box[1], box[2]};
  bp.dims = {cx.cfg.integer("grid.n1"), cx.cfg.integer("grid.n2"), cx.cfg.integer("grid.n3")};
  bp.snapshot_times = cx.cfg.list("snapshots");
  if (cx.cfg.empty("theta")) {
    bp.theta = run_calibration(cx, prof).theta;
    cx.err << "calibrated theta " << bp.theta << "\n";
  } else {
    bp.theta = cx.cfg.num("theta");
  }
  const auto rep = validate_gauge_ball(bp, prof);
  CsvTable t;
  t.columns = {"t", "hausdorff", "x3_intercept", "x3_intercept_exact", "radius_x1", "radius_x1_exact"};
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    t.add_row({rep.times[i], rep.hausdorff[i], rep.intercept[i], rep.intercept_exact[i], rep.radius[i],
               rep.radius_exact[i]});
    write_csv(cx.out_dir / ("levelset_" + stamp(int(i)) + ".csv"), curve_table(rep.curves[i]));
    if (!rep.exact[i].points.empty())
      write_csv(cx.out_dir / ("exact_" + stamp(int(i)) + ".csv"), curve_table(rep.exact[i]));
  }
  write_csv(cx.out_dir / "ball_report.csv", t);
  const double eps = bp.evolution.eps;
  std::ostringstream rs;
  rs << "theta " << format_double(bp.theta) << "\n"
     << "t_star " << format_double(rep.t_star) << "\n"
     << "max_hausdorff_half_life " << format_double(rep.max_hausdorff_half_life) << "\n"
     << "hausdorff_within_2eps " << (rep.max_hausdorff_half_life <= 2.0 * eps ? "yes" : "no") << "\n"
     << "intercepts_decreasing " << (rep.intercepts_decreasing ? "yes" : "no") << "\n";
  write_text(cx.out_dir / "report.txt", rs.str());
  cx.out << rs.str();
  return 0;
}

int cmd_profiles(Context& cx) {
  auto p = cx.cfg.evolution();
  const double tp = cx.cfg.num("profile.t");
  p.t_end = std::round(tp / p.dt) * p.dt;
  const auto grid = cx.cfg.grid();
  const auto prof = profile_for(cx.cfg);
  const auto tr = evolve(init_levelset_field(cx.cfg.shape(), p.eps, prof, grid), p, {p.t_end});
  const auto pr = extract_profiles(tr.snapshots.back(), p.t_end);
  auto table = [](const AxisProfile& a) {
    CsvTable t;
    t.columns = {"s", "m"};
    for (std::size_t i = 0; i < a.s.size(); ++i) t.add_row({a.s[i], a.value[i]});
    return t;
  };
  write_csv(cx.out_dir / "profile_x1.csv", table(pr.x1));
  write_csv(cx.out_dir / "profile_x3.csv", table(pr.x3));
  CsvTable s;
  s.columns = {"t", "crossing_x1", "crossing_x3", "max_slope_x1", "max_slope_x3", "slope_ratio"};
  s.add_row({pr.t, pr.x1.crossing, pr.x3.crossing, pr.x1.max_slope, pr.x3.max_slope,
             pr.x3.max_slope / pr.x1.max_slope});
  write_csv(cx.out_dir / "profiles_summary.csv", s);
  cx.out << to_csv(s);
  return 0;
}

int cmd_se2(Context& cx) {
  const auto p = cx.cfg.evolution();
  const auto box = cx.cfg.list("se2.box");
  const auto n = cx.cfg.list("se2.n");
  require(box.size() == 2 && n.size() == 3, ErrorCode::Config, "se2.box needs 2 entries and se2.n needs 3");
  Se2Shape shape;
  shape.kind = Se2ShapeKind::LiftedCircle;
  shape.radius = cx.cfg.num("shape.radius");
  shape.tube = cx.cfg.num("se2.tube");
  shape.theta_weight = cx.cfg.num("se2.theta_weight");
  const auto prof = profile_for(cx.cfg);
  const auto m0 = se2_init_field(shape, p.eps, prof, box[0], box[1], int(n[0]), int(n[1]), int(n[2]));
  const auto tr = se2_evolve(m0, p, snapshot_times(cx.cfg, p));
  CsvTable t;
  t.columns = {"t", "min", "max", "projected_area", "volume"};
  for (const auto& d : tr.diagnostics) t.add_row({d.t, d.min, d.max, d.projected_area, d.volume});
  write_csv(cx.out_dir / "se2_diagnostics.csv", t);
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i)
    write_field(cx.out_dir / ("se2_field_" + stamp(int(i)) + ".txt"), tr.snapshots[i]);
  cx.out << to_csv(t);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal level-set evolution on the Heisenberg group"};
  app.name("hmcf");
  app.require_subcommand(1, 1);

  using Handler = std::function<int(Context&)>;
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"equilibria", "Roots of m = tanh(beta (m + a))", cmd_equilibria},
      {"instanton", "Travelling-wave profile on the 1-D phase grid", cmd_instanton},
      {"theta", "Mobility from the profile quadrature", cmd_theta},
      {"evolve", "Evolve a level-set initial field", cmd_evolve},
      {"calibrate", "Mobility from a shrinking cylinder", cmd_calibrate},
      {"validate-ball", "Compare the gauge-ball evolution with the exact solution", cmd_validate_ball},
      {"profiles", "Axis profiles through the origin", cmd_profiles},
      {"se2", "Lifted-circle evolution on the roto-translation group", cmd_se2},
  };
  std::map<std::string, CommonArgs> args;
  for (const auto& [name, desc, fn] : commands) add_common(app.add_subcommand(name, desc), args[name], name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto& ca = args.at(name);
  try {
    Context cx{resolve(ca), ca.out, out, err};
    fs::create_directories(cx.out_dir);
    write_text(cx.out_dir / "resolved.cfg", cx.cfg.dump());
    for (const auto& [n, desc, fn] : commands)
      if (n == name) return fn(cx);
  } catch (const Error& e) {
    err << "error: " << name << ": " << e.what() << "\n";
    return e.is_usage() ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << name << ": IoError: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hmcf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hmcf
